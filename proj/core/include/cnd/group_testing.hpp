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

// Noncoherent group-testing decoders over measurement energies |Y_m|^2.
//
// A measurement is "low" when it is not erased and |Y_m|^2 < T. Every low
// measurement hands one strike to each node with a pulse there. The simple
// test eliminates any node with a strike; the t-tolerance test eliminates
// nodes with more than t strikes.

#ifndef CND_GROUP_TESTING_HPP
#define CND_GROUP_TESTING_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cnd/metrics.hpp"
#include "cnd/random_signatures.hpp"
#include "cnd/types.hpp"

namespace cnd {

struct GroupTestParams {
    double threshold = 2.0;   // T
    unsigned tolerance = 0;   // t
    double on_fraction = 0.02;  // q

    void validate() const;  // throws ConfigError
};

/// strikes[n] for every NIA n of the codebook.
using StrikeTable = std::vector<std::uint32_t>;

/// Surviving NIAs, ascending. Throws ShapeError on a length mismatch.
std::vector<Nia> simple_group_test(const MeasurementVector& y, const OnOffCodebook& book,
                                   double threshold);

std::vector<Nia> tolerance_group_test(const MeasurementVector& y, const OnOffCodebook& book,
                                      double threshold, unsigned tolerance);

StrikeTable strike_counts(const MeasurementVector& y, const OnOffCodebook& book, double threshold);

/// Log-spaced sparsity grid: 12 points on [0.005, 0.08].
std::vector<double> default_q_grid();
/// Threshold grid 1.0, 1.5, ..., 4.0.
std::vector<double> default_threshold_grid();

struct GridPoint {
    double q = 0.0;
    double threshold = 0.0;
    ErrorRates rates;
};

struct GridSearchResult {
    double q = 0.0;
    double threshold = 0.0;
    std::vector<GridPoint> table;  // q-major, ascending in both axes
};

/// Evaluates every threshold for one sparsity value, in the given order.
/// Grouping by q lets the caller draw one set of measurements per codebook.
using SparsityEvaluator =
    std::function<std::vector<ErrorRates>(double q, const std::vector<double>& thresholds)>;

/// Grid point minimizing miss + false-alarm rate. Ties go to the lowest q,
/// then the lowest T. Throws ConfigError on an empty grid.
GridSearchResult grid_search(std::vector<double> q_grid, std::vector<double> threshold_grid,
                             const SparsityEvaluator& evaluate);

}  // namespace cnd

#endif  // CND_GROUP_TESTING_HPP
