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

// Error bookkeeping and the random-access (birthday protocol) baseline.

#ifndef CND_METRICS_HPP
#define CND_METRICS_HPP

#include <cstdint>
#include <vector>

#include "cnd/types.hpp"

namespace cnd {

struct ErrorRates {
    double miss_rate = 0.0;
    double false_alarm_rate = 0.0;
    std::uint64_t trials = 0;
    double mean_neighbors = 0.0;

    double total() const noexcept { return miss_rate + false_alarm_rate; }
};

/// Pooled miss / false-alarm counts. Both rates are normalized by the total
/// number of true neighbors over all trials, not averaged per trial.
struct ErrorCounter {
    std::uint64_t misses = 0;
    std::uint64_t false_alarms = 0;
    std::uint64_t true_neighbors = 0;
    std::uint64_t trials = 0;

    /// Both inputs sorted ascending, no duplicates.
    void add(const std::vector<Nia>& truth, const std::vector<Nia>& estimate);
    void merge(const ErrorCounter& other) noexcept;
    ErrorRates rates() const noexcept;
};

/// One-shot helper over a single trial.
ErrorRates error_rates(const std::vector<Nia>& truth, const std::vector<Nia>& estimate);

/// Probability that a given neighbor is never heard alone in k contention
/// periods:
///
///     sum_{z=1..N} C(N,z) rho^z (1-rho)^(N-z) [1 - theta (1-theta)^(z-1)]^k
///
/// Terms are evaluated in the log domain and the sum stops once the binomial
/// weight past the mode drops below `truncation`.
double random_access_miss(std::uint64_t population, double rho, double theta, std::uint64_t k,
                          double truncation = 1e-18);

struct RandomAccessPlan {
    std::uint64_t frames = 0;   // k*
    double theta = 0.0;         // transmit probability at k*
    double miss = 0.0;          // random_access_miss at (k*, theta)
    std::uint64_t symbols = 0;  // frames * ceil(bits / 2)
};

/// Smallest k whose theta-optimized miss probability is <= target.
/// Throws ConfigError if target is outside (0, 1) or mean_neighbors <= 0.
RandomAccessPlan min_frames_random_access(std::uint64_t population, double mean_neighbors,
                                          double target, unsigned bits_per_frame);

/// Theta minimizing random_access_miss at fixed k, golden section on (0, 1).
double optimal_transmit_probability(std::uint64_t population, double rho, std::uint64_t k,
                                    double tolerance = 1e-4);

struct TimingReport {
    double compressed_seconds = 0.0;
    double random_access_seconds = 0.0;
};

/// Throws ConfigError on non-positive durations.
TimingReport discovery_time_report(std::uint64_t symbols, double symbol_interval,
                                   std::uint64_t frames, double frame_duration);

}  // namespace cnd

#endif  // CND_METRICS_HPP
