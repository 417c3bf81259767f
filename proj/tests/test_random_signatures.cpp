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

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>

#include "cnd/random_signatures.hpp"
#include "cnd/rng.hpp"

using namespace cnd;

TEST(RandomCodebook, SameInputsSameSignature) {
    const auto a = gen_onoff_signature(123, 1024, 0.0371);
    const auto b = gen_onoff_signature(123, 1024, 0.0371);
    EXPECT_EQ(a.slots, b.slots);
    EXPECT_EQ(a.values, b.values);
    EXPECT_NE(a.slots, gen_onoff_signature(124, 1024, 0.0371).slots);
}

TEST(RandomCodebook, FrozenRegressionValue) {
    // Pins the keyed generator so codebooks stay identical across builds.
    const RandomCodebook book(10000, 1024, 0.0371);
    std::uint64_t checksum = 0;
    std::uint64_t pulses = 0;
    for (Nia n = 0; n < 100; ++n)
        for (std::uint32_t m : book.on_slots(n)) {
            checksum = checksum * 1315423911ULL + m + 1;
            ++pulses;
        }
    EXPECT_EQ(pulses, 3878U);
    EXPECT_EQ(checksum, 10275417162211713720ULL);
}

TEST(RandomCodebook, PulseAgreesWithSlotLists) {
    const RandomCodebook book(50, 256, 0.1, 77);
    const OnOffCodebook dense = book.materialize();
    for (Nia n = 0; n < 50; ++n)
        for (std::size_t m = 0; m < 256; ++m) EXPECT_EQ(book.pulse(n, m), dense.pulse(n, m));
}

TEST(RandomCodebook, MeanOnCount) {
    for (auto [M, q, target, tol] : {std::tuple{1024, 0.0371, 38.0, 0.02}, std::tuple{2048, 0.0176, 36.0, 0.02}}) {
        const RandomCodebook book(10000, M, q);
        double total = 0.0;
        for (Nia n = 0; n < 10000; ++n) total += static_cast<double>(book.on_slots(n).size());
        EXPECT_NEAR(total / 10000.0, target, tol * target) << "M=" << M;
    }
}

TEST(RandomCodebook, OnCountIsBinomial) {
    constexpr int M = 1024;
    constexpr double q = 0.0371;
    constexpr int n = 10000;
    const RandomCodebook book(n, M, q);
    std::vector<int> hist(M + 1, 0);
    for (Nia k = 0; k < n; ++k) ++hist[book.on_slots(k).size()];

    // Pool bins so every expected count is at least 5.
    const boost::math::binomial_distribution<> law(M, q);
    std::vector<double> expected, observed;
    double e_acc = 0.0, o_acc = 0.0;
    for (int k = 0; k <= M; ++k) {
        e_acc += n * boost::math::pdf(law, k);
        o_acc += hist[k];
        if (e_acc >= 5.0 && n * boost::math::cdf(boost::math::complement(law, k)) >= 5.0) {
            expected.push_back(e_acc);
            observed.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    expected.back() += e_acc;
    observed.back() += o_acc;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
        chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    const boost::math::chi_squared_distribution<> ref(static_cast<double>(expected.size() - 1));
    EXPECT_LT(chi2, boost::math::quantile(ref, 0.99));
}

TEST(RandomCodebook, RejectsBadParameters) {
    EXPECT_THROW(RandomCodebook(10, 64, 0.0), ConfigError);
    EXPECT_THROW(RandomCodebook(10, 64, 1.0), ConfigError);
    EXPECT_THROW(RandomCodebook(10, 0, 0.5), ConfigError);
    EXPECT_THROW(RandomCodebook(10, 64, 0.5).signature(10), AddressError);
}

TEST(OnOffCodebook, FromBinaryAndShapeErrors) {
    const auto book = OnOffCodebook::from_binary({{1, 0, 1}, {0, 0, 0}});
    EXPECT_EQ(book.length(), 3U);
    EXPECT_EQ(book.on_slots(0), (std::vector<std::uint32_t>{0, 2}));
    EXPECT_TRUE(book.on_slots(1).empty());
    EXPECT_THROW(OnOffCodebook::from_binary({{1, 0}, {1}}), ShapeError);
    EXPECT_THROW(OnOffCodebook(2, {{1, 0}}), ShapeError);
    EXPECT_THROW(OnOffCodebook(2, {{2}}), ShapeError);
}

TEST(RandomizePhases, OffEntriesAndMagnitudes) {
    OnOffSignature off;
    off.length = 16;
    EXPECT_TRUE(randomize_phases(off, 3, 5).slots.empty());

    const auto sig = gen_onoff_signature(9, 512, 0.1);
    const auto rot = randomize_phases(sig, 9, 1);
    ASSERT_EQ(rot.slots, sig.slots);
    for (std::size_t k = 0; k < sig.values.size(); ++k) EXPECT_NEAR(std::abs(rot.values[k]), 1.0, 1e-15);
    EXPECT_NE(randomize_phases(sig, 9, 2).values, rot.values);
}

TEST(RandomizePhases, DoubleCancellationIsRare) {
    // Two neighbors share slots 0 and 1 and cancel exactly at slot 0.
    OnOffSignature base;
    base.length = 2;
    base.slots = {0, 1};
    base.values = {1.0, 1.0};
    constexpr int trials = 100000;
    int twice = 0, twice_plain = 0;
    for (int t = 0; t < trials; ++t) {
        const Nia a = 2 * static_cast<Nia>(t);
        const Nia b = a + 1;
        for (bool randomized : {true, false}) {
            const auto sa = randomized ? randomize_phases(base, a, 17) : base;
            const auto sb = randomized ? randomize_phases(base, b, 17) : base;
            const cplx ua = 1.0;
            const cplx ub = -ua * sa.values[0] / sb.values[0];
            const bool cancels = std::abs(ua * sa.values[1] + ub * sb.values[1]) < 1e-3;
            (randomized ? twice : twice_plain) += cancels;
        }
    }
    EXPECT_LT(double(twice) / trials, 1e-3);
    EXPECT_EQ(twice_plain, trials);
}
