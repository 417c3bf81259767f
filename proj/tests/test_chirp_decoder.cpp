// SPDX-License-Identifier: Apache-2.0
//
// cnd - compressed neighbor discovery for wireless networks
// Copyright (C) 2026 The cnd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <gtest/gtest.h>

#include "cnd/channel.hpp"
#include "cnd/chirp_decoder.hpp"
#include "cnd/rng.hpp"
#include "oracles.hpp"

using namespace cnd;

namespace {

const cplx J{0.0, 1.0};

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    KeyedStream rng(seed, StreamTag::test_data);
    std::vector<cplx> v(n);
    for (auto& z : v) z = rng.complex_normal();
    return v;
}

double energy(const std::vector<cplx>& v) {
    double e = 0.0;
    for (cplx z : v) e += std::norm(z);
    return e;
}

RmCodebookParams params(unsigned m, unsigned n1, unsigned n2, bool erasures) {
    RmCodebookParams p;
    p.m = m;
    p.m0 = 1;
    p.n1 = n1;
    p.n2 = n2;
    p.erasures = erasures;
    return p;
}

ChirpParams plain(unsigned iterations, double threshold) {
    ChirpParams p;
    p.max_iterations = iterations;
    p.accept_threshold = threshold;
    return p;
}

}  // namespace

TEST(Fwht, SmallExamples) {
    EXPECT_EQ(fwht({1, 1}), (std::vector<cplx>{2, 0}));
    EXPECT_EQ(fwht({1, 0, 0, 0}), (std::vector<cplx>{1, 1, 1, 1}));
    EXPECT_EQ(fwht({1, -1, 1, -1}), (std::vector<cplx>{0, 4, 0, 0}));
    EXPECT_EQ(fwht({5}), (std::vector<cplx>{5}));
}

TEST(Fwht, MatchesDefinitionInvolutionAndParseval) {
    for (std::size_t n : {2U, 8U, 64U, 256U}) {
        const auto v = random_vector(n, n);
        const auto fast = fwht(v);
        const auto slow = oracle::walsh(v);
        for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-9);
        const auto back = fwht(fast);
        for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(back[k] / double(n) - v[k]), 1e-9);
        EXPECT_NEAR(energy(fast), double(n) * energy(v), 1e-9 * double(n) * energy(v));
    }
}

TEST(Fwht, RejectsNonPowerOfTwo) {
    EXPECT_THROW(fwht(std::vector<cplx>(6)), ShapeError);
    EXPECT_THROW(fwht({}), ShapeError);
}

TEST(ArgmaxAbs, LowestIndexOnTies) {
    const std::vector<cplx> v{1, -3, 3.0 * J, 2};
    EXPECT_EQ(argmax_abs(v), 1U);
}

TEST(RowRecovery, SingleCodewordGivesEveryRow) {
    const RmCodebook book(params(5, 5, 5, false));
    KeyedStream rng(3, StreamTag::test_data);
    for (int t = 0; t < 100; ++t) {
        const Nia n = rng.below(book.population());
        const RmCodeword w = book.codeword(n);
        for (unsigned i = 1; i <= 5; ++i) {
            const auto peak = recover_matrix_row(w.symbols, i, 5);
            ASSERT_TRUE(peak.has_value());
            EXPECT_EQ(peak->row, w.p.rows[i - 1]) << "nia=" << n << " i=" << i;
            EXPECT_NEAR(peak->magnitude, 32.0, 1e-9);
        }
    }
    const auto flat = book.codeword(0).symbols;  // b = 0, c = 0
    EXPECT_EQ(recover_matrix_row(flat, 1, 5)->row, 0U);
    EXPECT_FALSE(recover_matrix_row(std::vector<cplx>(32), 1, 5).has_value());
}

TEST(RowRecovery, CyclicShiftAgreesOnFirstRow) {
    const RmCodebook book(params(6, 6, 6, false));
    for (Nia n = 0; n < book.population(); n += 131) {
        const RmCodeword w = book.codeword(n);
        EXPECT_EQ(recover_matrix_row(w.symbols, 1, 6, ShiftMode::cyclic)->row, w.p.rows[0]);
    }
}

TEST(RowRecovery, PeaksAreOrdered) {
    const auto v = random_vector(64, 11);
    const auto peaks = recover_matrix_row_peaks(v, 1, 6, ShiftMode::dyadic, 10);
    ASSERT_EQ(peaks.size(), 10U);
    for (std::size_t k = 1; k < peaks.size(); ++k) EXPECT_GE(peaks[k - 1].magnitude, peaks[k].magnitude);
    EXPECT_EQ(peaks[0].row, recover_matrix_row(v, 1, 6)->row);
}

TEST(BRecovery, RoundTrip) {
    const RmCodebook book(params(6, 6, 6, false));
    KeyedStream rng(4, StreamTag::test_data);
    for (int t = 0; t < 1000; ++t) {
        const Nia n = rng.below(book.population());
        const RmCodeword w = book.codeword(n);
        EXPECT_EQ(recover_b(w.symbols, w.p, 6), w.b);
    }
    const RmCodebook narrow(params(6, 3, 6, false));
    for (Nia n = 0; n < narrow.population(); n += 7) {
        const RmCodeword w = narrow.codeword(n);
        EXPECT_EQ(recover_b(w.symbols, w.p, 3), w.b);
    }
    EXPECT_EQ(recover_b(std::vector<cplx>(64), SymMatrix(6), 6), 0U);
}

TEST(LeastSquares, UnitColumn) {
    const std::vector<cplx> y{2.0 + J, 1, 0};
    const auto r = least_squares_update(y, {{1, 0, 0}});
    ASSERT_EQ(r.coefficients.size(), 1U);
    EXPECT_LT(std::abs(r.coefficients[0] - (2.0 + J)), 1e-12);
    EXPECT_LT(std::abs(r.residual[1] - cplx{1}), 1e-12);
    EXPECT_FALSE(r.rank_deficient);
}

TEST(LeastSquares, OrthogonalColumnsAndSkippedRows) {
    const std::vector<cplx> c1{1, 1, 1, 1}, c2{1, -1, 1, -1};
    std::vector<cplx> y(4);
    for (int k = 0; k < 4; ++k) y[k] = 3.0 * c1[k] - 2.0 * J * c2[k];
    const auto r = least_squares_update(y, {c1, c2});
    EXPECT_LT(std::abs(r.coefficients[0] - 3.0), 1e-12);
    EXPECT_LT(std::abs(r.coefficients[1] + 2.0 * J), 1e-12);
    EXPECT_LT(energy(r.residual), 1e-20);

    y[3] = 100.0;
    const std::vector<std::uint8_t> skip{0, 0, 0, 1};
    const auto s = least_squares_update(y, {c1, c2}, skip);
    EXPECT_LT(std::abs(s.coefficients[0] - 3.0), 1e-12);
    EXPECT_EQ(s.residual[3], cplx{100.0});
}

TEST(LeastSquares, ResidualShrinksWithMoreColumns) {
    const auto y = random_vector(32, 5);
    std::vector<std::vector<cplx>> cols;
    double last = energy(y);
    for (int k = 0; k < 8; ++k) {
        cols.push_back(random_vector(32, 100 + k));
        const double e = energy(least_squares_update(y, cols).residual);
        EXPECT_LE(e, last + 1e-9);
        last = e;
    }
    cols.push_back(cols[0]);
    EXPECT_TRUE(least_squares_update(y, cols).rank_deficient);
}

TEST(ChirpDecode, SingleCodewordExact) {
    const RmCodebook book(params(6, 6, 6, false));
    for (Nia n : {Nia{0}, Nia{1}, Nia{777}, Nia{4095}}) {
        MeasurementVector y;
        for (cplx z : book.codeword(n).symbols) y.samples.push_back((1.5 - 0.5 * J) * z);
        const auto r = chirp_decode(y, book, plain(4, 0.5));
        ASSERT_EQ(r.neighbors, std::vector<Nia>{n});
        EXPECT_LT(std::abs(r.coefficients[0] - (1.5 - 0.5 * J)), 1e-9);
        EXPECT_LT(r.residual_energy, 1e-18);
        EXPECT_EQ(r.stop_reason, "residual exhausted");
    }
}

TEST(ChirpDecode, ZeroInputFindsNothing) {
    const RmCodebook book(params(5, 5, 5, true));
    MeasurementVector y;
    y.samples.assign(32, cplx{});
    const auto r = chirp_decode(y, book, plain(10, 0.5));
    EXPECT_TRUE(r.neighbors.empty());
    EXPECT_EQ(r.stop_reason, "residual exhausted");
}

TEST(ChirpDecode, AcceptedCoefficientsClearThreshold) {
    RmCodebookParams p = params(8, 8, 8, true);
    p.m0 = 2;
    const RmCodebook book(p);
    KeyedStream rng(6, StreamTag::test_data);
    for (int t = 0; t < 50; ++t) {
        std::vector<OnOffSignature> sigs;
        SupportVector x;
        for (int k = 0; k < 4; ++k) {
            const Nia n = rng.below(book.population());
            sigs.push_back(book.signature(n));
            x.entries[n] = rng.complex_normal() * 2.0;
        }
        const auto y = synthesize_received(sigs, x, 1.0, book.length(), std::nullopt);
        const auto r = chirp_decode(y, book, plain(12, 0.8));
        EXPECT_TRUE(std::is_sorted(r.neighbors.begin(), r.neighbors.end()));
        ASSERT_EQ(r.neighbors.size(), r.coefficients.size());
        for (cplx z : r.coefficients) EXPECT_GE(std::abs(z), 0.8);
        EXPECT_LE(r.iterations_used, 12U);
    }
}

TEST(ChirpDecode, WorkedExample) {
    const std::vector<cplx> s1{0, J, 0, 0, 1, 0, 0, 0, -1, -J, 0, 1, 1, 0, 0, 0,
                               0, -J, 0, 0, -1, 0, 0, 0, 1, J, 0, 1, -1, 0, 0, 0};
    const std::vector<cplx> s2{1, J, 0, -J, 0, 0, 1, 0, 1, 0, -1, 0, 0, J, -1, -J,
                               -1, -J, 0, -J, 0, 0, 1, 0, 1, 0, 1, 0, 0, J, 1, J};
    RmCodebook book(params(5, 5, 5, true));
    std::vector<Nia> nias;
    for (const auto* s : {&s1, &s2}) {
        for (Nia n = 0; n < book.population(); ++n) {
            const auto w = book.codeword(n).symbols;
            bool ok = true;
            for (std::size_t a = 0; a < 32 && ok; ++a) ok = (*s)[a] == cplx{} || (*s)[a] == w[a];
            if (ok) nias.push_back(n);
        }
        std::vector<std::uint8_t> segment(16);
        for (std::size_t a = 0; a < 16; ++a) segment[a] = (*s)[a] != cplx{};
        book.set_erasure_override(nias.back(), erasure_from_segment(segment, 5));
    }
    ASSERT_EQ(nias.size(), 2U);
    EXPECT_EQ(nias[0], 770U);

    MeasurementVector y;
    y.erasure_mask.assign(32, 0);
    for (std::size_t a = 0; a < 32; ++a) y.samples.push_back(3.0 * s1[a] + 2.0 * J * s2[a]);
    for (std::uint32_t a : {1, 4, 6, 8, 9, 12, 17, 20, 22, 24, 25, 28}) {
        y.samples[a] = 0.0;
        y.erasure_mask[a] = 1;
    }
    const auto r = chirp_decode(y, book, plain(5, 0.5));
    std::vector<Nia> want = nias;
    std::sort(want.begin(), want.end());
    ASSERT_EQ(r.neighbors, want);
    for (std::size_t k = 0; k < 2; ++k) {
        const cplx expect = r.neighbors[k] == nias[0] ? cplx{3.0} : 2.0 * J;
        EXPECT_LT(std::abs(r.coefficients[k] - expect), 1e-6);
    }
}

TEST(ChirpParams, ValidationAndDefaults) {
    EXPECT_NO_THROW(ChirpParams{}.validate());
    ChirpParams p;
    p.accept_threshold = 0.0;
    EXPECT_THROW(p.validate(), ConfigError);
    p = ChirpParams{};
    p.weak_limit = 0;
    EXPECT_THROW(p.validate(), ConfigError);
    p = ChirpParams{};
    p.row_candidates = 0;
    EXPECT_THROW(p.validate(), ConfigError);
    const auto d = ChirpParams::defaults(10.0, 100.0, 1.0);
    EXPECT_EQ(d.max_iterations, 30U);
    EXPECT_DOUBLE_EQ(d.accept_threshold, 5.0);
    EXPECT_EQ(d.weak_limit, 5U);
    EXPECT_EQ(ChirpParams::defaults(3.4, 1.0, 1.0).max_iterations, 11U);
}
