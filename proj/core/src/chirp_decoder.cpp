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

#include "cnd/chirp_decoder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace cnd {

void ChirpParams::validate() const {
    if (max_iterations < 1) throw ConfigError("T_max must be >= 1");
    if (!(accept_threshold > 0.0)) throw ConfigError("eta_0 must be > 0");
    if (weak_limit < 1) throw ConfigError("n_0 must be >= 1");
    if (row_candidates < 1) throw ConfigError("row_candidates must be >= 1");
}

ChirpParams ChirpParams::defaults(double mean_neighbors, double snr, double eta) {
    ChirpParams p;
    p.max_iterations = std::max(1U, static_cast<unsigned>(std::ceil(3.0 * mean_neighbors)));
    p.accept_threshold = 0.5 * std::sqrt(snr * eta);
    p.weak_limit = 5;
    return p;
}

void fwht_inplace(std::span<cplx> v) {
    const std::size_t n = v.size();
    if (n == 0 || !std::has_single_bit(n)) throw ShapeError("fwht length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t start = 0; start < n; start += 2 * h) {
            for (std::size_t k = start; k < start + h; ++k) {
                const cplx u = v[k];
                const cplx w = v[k + h];
                v[k] = u + w;
                v[k + h] = u - w;
            }
        }
    }
}

std::vector<cplx> fwht(std::vector<cplx> v) {
    fwht_inplace(v);
    return v;
}

std::size_t argmax_abs(std::span<const cplx> v, std::size_t stride) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 0; k < v.size(); k += stride) {
        const double mag = std::norm(v[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    return best;
}

std::vector<RowPeak> recover_matrix_row_peaks(std::span<const cplx> yr, unsigned i, unsigned m,
                                              ShiftMode shift, std::size_t count) {
    const std::size_t n = std::size_t{1} << m;
    if (yr.size() != n) throw ShapeError("residual length must be 2^m");
    if (i < 1 || i > m) throw ShapeError("row index must lie in [1, m]");
    const std::size_t s = std::size_t{1} << (m - i);
    std::vector<cplx> corr(n);
    bool nonzero = false;
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t partner = shift == ShiftMode::dyadic ? (a ^ s) : ((a + s) & (n - 1));
        corr[a] = std::conj(yr[a]) * yr[partner];
        nonzero = nonzero || corr[a] != cplx{};
    }
    if (!nonzero || count == 0) return {};
    fwht_inplace(corr);
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0U);
    count = std::min(count, n);
    // Magnitude descending, lowest index first among equals.
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          const double na = std::norm(corr[a]);
                          const double nb = std::norm(corr[b]);
                          return na > nb || (na == nb && a < b);
                      });
    std::vector<RowPeak> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back({idx[k], std::abs(corr[idx[k]])});
    return out;
}

std::optional<RowPeak> recover_matrix_row(std::span<const cplx> yr, unsigned i, unsigned m,
                                          ShiftMode shift) {
    auto peaks = recover_matrix_row_peaks(yr, i, m, shift, 1);
    if (peaks.empty()) return std::nullopt;
    return peaks.front();
}

std::uint32_t recover_b(std::span<const cplx> yr, const SymMatrix& p, unsigned n1) {
    const std::size_t n = std::size_t{1} << p.m;
    if (yr.size() != n) throw ShapeError("residual length must be 2^m");
    if (n1 > p.m) throw ShapeError("n1 must not exceed m");
    const std::vector<cplx> chirp = rm_symbols(0, p);
    std::vector<cplx> v(n);
    for (std::size_t a = 0; a < n; ++a) v[a] = yr[a] * std::conj(chirp[a]);
    fwht_inplace(v);
    return static_cast<std::uint32_t>(argmax_abs(v, std::size_t{1} << (p.m - n1)));
}

LeastSquaresResult least_squares_update(std::span<const cplx> yr,
                                        const std::vector<std::vector<cplx>>& columns,
                                        std::span<const std::uint8_t> skip) {
    const std::size_t n = yr.size();
    if (!skip.empty() && skip.size() != n) throw ShapeError("skip mask length mismatch");
    for (const auto& col : columns)
        if (col.size() != n) throw ShapeError("least-squares column length mismatch");

    std::vector<std::size_t> used;
    used.reserve(n);
    for (std::size_t r = 0; r < n; ++r)
        if (skip.empty() || skip[r] == 0) used.push_back(r);

    LeastSquaresResult out;
    out.residual.assign(yr.begin(), yr.end());
    if (columns.empty()) return out;

    const auto rows = static_cast<Eigen::Index>(used.size());
    const auto cols = static_cast<Eigen::Index>(columns.size());
    Eigen::MatrixXcd s(rows, cols);
    Eigen::VectorXcd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        y(r) = yr[used[static_cast<std::size_t>(r)]];
        for (Eigen::Index c = 0; c < cols; ++c)
            s(r, c) = columns[static_cast<std::size_t>(c)][used[static_cast<std::size_t>(r)]];
    }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(s);
    const Eigen::VectorXcd x = cod.solve(y);
    out.rank_deficient = cod.rank() < cols;
    out.coefficients.assign(x.data(), x.data() + x.size());
    const Eigen::VectorXcd fit = s * x;
    for (Eigen::Index r = 0; r < rows; ++r) out.residual[used[static_cast<std::size_t>(r)]] -= fit(r);
    return out;
}

namespace {

double energy(const std::vector<cplx>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0, [](double acc, cplx z) { return acc + std::norm(z); });
}

}  // namespace

DiscoveryResult chirp_decode(const MeasurementVector& y, const RmCodebook& book,
                             const ChirpParams& params) {
    params.validate();
    const RmCodebookParams& cp = book.params();
    const std::size_t n = book.length();
    if (y.size() != n)
        throw ShapeError("measurement length " + std::to_string(y.size()) + " does not match 2^m = " +
                         std::to_string(n));
    std::vector<std::uint8_t> skip = y.erasure_mask;
    if (skip.empty()) skip.assign(n, 0);
    if (skip.size() != n) throw ShapeError("erasure mask length mismatch");

    std::vector<cplx> yr = y.samples;
    for (std::size_t a = 0; a < n; ++a)
        if (skip[a]) yr[a] = cplx{};

    DiscoveryResult result;
    std::vector<std::vector<cplx>> columns;
    std::vector<cplx> total;  // accumulated coefficient per candidate
    std::vector<std::uint64_t> found_c;
    const double initial = energy(yr);
    result.stop_reason = "iteration limit";

    for (unsigned it = 1; it <= params.max_iterations; ++it) {
        const double e = energy(yr);
        if (e == 0.0 || e < 1e-24 * initial) {
            result.stop_reason = "residual exhausted";
            break;
        }
        const auto first = recover_matrix_row_peaks(yr, 1, cp.m, params.shift, params.row_candidates);
        if (first.empty()) {
            result.stop_reason = "residual exhausted";
            break;
        }
        std::vector<RowPeak> tail;
        for (unsigned i = 2; i <= book.decode_rows(); ++i) {
            const auto peak = recover_matrix_row(yr, i, cp.m, params.shift);
            if (!peak) break;
            tail.push_back(*peak);
        }

        std::optional<ChirpIteration> best;
        std::vector<cplx> column;
        double best_score = -1.0;
        bool consistent = false;
        const auto consider = [&](ChirpIteration step) {
            step.b = recover_b(yr, book.basis().combine(step.c, cp.n2), cp.n1);
            step.nia = bc_to_nia({step.b, step.c}, cp);
            if (std::find(result.candidates.begin(), result.candidates.end(), step.nia) !=
                result.candidates.end())
                return;
            std::vector<cplx> col = book.signature(step.nia).dense();
            cplx inner{};
            double norm = 0.0;
            for (std::size_t a = 0; a < n; ++a) {
                if (skip[a]) {
                    col[a] = cplx{};
                    continue;
                }
                inner += std::conj(col[a]) * yr[a];
                norm += std::norm(col[a]);
            }
            const double score = norm > 0.0 ? std::norm(inner) / norm : 0.0;
            if (score > best_score) {
                best_score = score;
                best = std::move(step);
                column = std::move(col);
            }
        };
        for (const RowPeak& head : first) {
            ChirpIteration step;
            step.rows.push_back(head.row);
            step.row_peaks.push_back(head.magnitude);
            for (const RowPeak& p : tail) {
                step.rows.push_back(p.row);
                step.row_peaks.push_back(p.magnitude);
            }
            const auto c = book.complete(step.rows);
            if (!c) continue;
            consistent = true;
            step.c = *c;
            consider(std::move(step));
        }
        // Nodes sharing P with an earlier find: their rows can cancel in the
        // shift correlation, but dechirping by that P still separates them.
        for (std::uint64_t c : found_c) {
            ChirpIteration step;
            step.c = c;
            consider(std::move(step));
        }
        if (!best) {
            result.stop_reason = consistent ? "repeated candidate" : "inconsistent rows";
            break;
        }
        ChirpIteration step = std::move(*best);
        if (std::find(found_c.begin(), found_c.end(), step.c) == found_c.end()) found_c.push_back(step.c);

        columns.push_back(std::move(column));
        result.candidates.push_back(step.nia);
        total.push_back(cplx{});

        LeastSquaresResult ls = least_squares_update(yr, columns, skip);
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += ls.coefficients[k];
        yr = std::move(ls.residual);
        step.update = std::move(ls.coefficients);
        step.rank_deficient = ls.rank_deficient;
        step.residual_energy = energy(yr);
        result.trace.push_back(std::move(step));
        result.iterations_used = it;

        const auto weak = std::count_if(total.begin(), total.end(), [&](cplx z) {
            return std::abs(z) < params.accept_threshold;
        });
        if (static_cast<unsigned>(weak) > params.weak_limit) {
            result.stop_reason = "weak limit";
            break;
        }
    }

    result.residual_energy = energy(yr);
    result.candidate_coefficients = total;
    std::vector<std::size_t> order(result.candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return result.candidates[a] < result.candidates[b]; });
    for (std::size_t k : order) {
        if (std::abs(total[k]) < params.accept_threshold) continue;
        result.neighbors.push_back(result.candidates[k]);
        result.coefficients.push_back(total[k]);
    }
    return result;
}

}  // namespace cnd
