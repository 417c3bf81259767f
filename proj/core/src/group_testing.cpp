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

#include "cnd/group_testing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cnd {

void GroupTestParams::validate() const {
    if (!(threshold > 0.0)) throw ConfigError("energy threshold T must be > 0");
    if (!(on_fraction > 0.0 && on_fraction < 1.0)) throw ConfigError("on-fraction q must lie in (0, 1)");
}

namespace {

std::vector<std::uint8_t> low_measurements(const MeasurementVector& y, const OnOffCodebook& book,
                                           double threshold) {
    if (y.size() != book.length())
        throw ShapeError("measurement length " + std::to_string(y.size()) +
                         " does not match codebook length " + std::to_string(book.length()));
    std::vector<std::uint8_t> low(y.size(), 0);
    for (std::size_t m = 0; m < y.size(); ++m)
        low[m] = !y.erased(m) && std::norm(y.samples[m]) < threshold;
    return low;
}

}  // namespace

std::vector<Nia> tolerance_group_test(const MeasurementVector& y, const OnOffCodebook& book,
                                      double threshold, unsigned tolerance) {
    const auto low = low_measurements(y, book, threshold);
    std::vector<Nia> survivors;
    for (Nia n = 0; n < book.population(); ++n) {
        // Countdown from t+1; reaching zero eliminates the node.
        std::uint64_t remaining = std::uint64_t{tolerance} + 1;
        for (std::uint32_t m : book.on_slots(n)) {
            if (low[m] && --remaining == 0) break;
        }
        if (remaining > 0) survivors.push_back(n);
    }
    return survivors;
}

std::vector<Nia> simple_group_test(const MeasurementVector& y, const OnOffCodebook& book,
                                   double threshold) {
    return tolerance_group_test(y, book, threshold, 0);
}

StrikeTable strike_counts(const MeasurementVector& y, const OnOffCodebook& book, double threshold) {
    const auto low = low_measurements(y, book, threshold);
    StrikeTable strikes(book.population(), 0);
    for (Nia n = 0; n < book.population(); ++n)
        for (std::uint32_t m : book.on_slots(n)) strikes[n] += low[m];
    return strikes;
}

std::vector<double> default_q_grid() {
    constexpr int points = 12;
    const double lo = std::log(0.005);
    const double hi = std::log(0.08);
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = std::exp(lo + (hi - lo) * i / (points - 1));
    return grid;
}

std::vector<double> default_threshold_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 6; ++i) grid.push_back(1.0 + 0.5 * i);
    return grid;
}

GridSearchResult grid_search(std::vector<double> q_grid, std::vector<double> threshold_grid,
                             const SparsityEvaluator& evaluate) {
    if (q_grid.empty() || threshold_grid.empty()) throw ConfigError("parameter grids must be nonempty");
    std::sort(q_grid.begin(), q_grid.end());
    std::sort(threshold_grid.begin(), threshold_grid.end());

    GridSearchResult result;
    double best = 0.0;
    for (double q : q_grid) {
        const std::vector<ErrorRates> row = evaluate(q, threshold_grid);
        if (row.size() != threshold_grid.size()) throw ShapeError("evaluator returned wrong row size");
        for (std::size_t i = 0; i < row.size(); ++i) {
            result.table.push_back({q, threshold_grid[i], row[i]});
            // Strict improvement only, so earlier (smaller) q and T win ties.
            if (result.table.size() == 1 || row[i].total() < best) {
                best = row[i].total();
                result.q = q;
                result.threshold = threshold_grid[i];
            }
        }
    }
    return result;
}

}  // namespace cnd
