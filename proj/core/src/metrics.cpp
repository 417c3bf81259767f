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

#include "cnd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace cnd {

void ErrorCounter::add(const std::vector<Nia>& truth, const std::vector<Nia>& estimate) {
    std::vector<Nia> missed;
    std::vector<Nia> spurious;
    std::set_difference(truth.begin(), truth.end(), estimate.begin(), estimate.end(),
                        std::back_inserter(missed));
    std::set_difference(estimate.begin(), estimate.end(), truth.begin(), truth.end(),
                        std::back_inserter(spurious));
    misses += missed.size();
    false_alarms += spurious.size();
    true_neighbors += truth.size();
    ++trials;
}

void ErrorCounter::merge(const ErrorCounter& other) noexcept {
    misses += other.misses;
    false_alarms += other.false_alarms;
    true_neighbors += other.true_neighbors;
    trials += other.trials;
}

ErrorRates ErrorCounter::rates() const noexcept {
    ErrorRates r;
    r.trials = trials;
    if (trials > 0) r.mean_neighbors = static_cast<double>(true_neighbors) / static_cast<double>(trials);
    if (true_neighbors > 0) {
        r.miss_rate = static_cast<double>(misses) / static_cast<double>(true_neighbors);
        r.false_alarm_rate = static_cast<double>(false_alarms) / static_cast<double>(true_neighbors);
    }
    return r;
}

ErrorRates error_rates(const std::vector<Nia>& truth, const std::vector<Nia>& estimate) {
    ErrorCounter c;
    c.add(truth, estimate);
    return c.rates();
}

namespace {

double log_choose(double n, double z) {
    return std::lgamma(n + 1.0) - std::lgamma(z + 1.0) - std::lgamma(n - z + 1.0);
}

// log of [1 - theta (1-theta)^(z-1)].
double log_bracket(double theta, std::uint64_t z) {
    if (z == 1) return std::log1p(-theta);
    if (theta >= 1.0) return 0.0;
    const double solo = theta * std::exp(static_cast<double>(z - 1) * std::log1p(-theta));
    return std::log1p(-solo);
}

}  // namespace

double random_access_miss(std::uint64_t population, double rho, double theta, std::uint64_t k,
                          double truncation) {
    if (!(rho > 0.0)) return 0.0;
    if (rho >= 1.0) {
        // Every node is a neighbor: Z == N surely.
        return std::exp(static_cast<double>(k) * log_bracket(theta, population));
    }
    const double n = static_cast<double>(population);
    const double log_rho = std::log(rho);
    const double log_not = std::log1p(-rho);
    const double mode = n * rho;
    const double kd = static_cast<double>(k);
    double sum = 0.0;
    for (std::uint64_t z = 1; z <= population; ++z) {
        const double zd = static_cast<double>(z);
        const double log_weight = log_choose(n, zd) + zd * log_rho + (n - zd) * log_not;
        if (zd > mode && log_weight < std::log(truncation)) break;
        const double lb = log_bracket(theta, z);
        if (std::isinf(lb)) continue;  // theta == 1, z == 1: the neighbor is always heard
        sum += std::exp(log_weight + kd * lb);
    }
    return sum;
}

double optimal_transmit_probability(std::uint64_t population, double rho, std::uint64_t k,
                                    double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-9;
    double hi = 1.0 - 1e-9;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = random_access_miss(population, rho, x1, k);
    double f2 = random_access_miss(population, rho, x2, k);
    while (hi - lo > tolerance) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = random_access_miss(population, rho, x1, k);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = random_access_miss(population, rho, x2, k);
        }
    }
    return 0.5 * (lo + hi);
}

RandomAccessPlan min_frames_random_access(std::uint64_t population, double mean_neighbors,
                                          double target, unsigned bits_per_frame) {
    if (!(target > 0.0 && target < 1.0)) throw ConfigError("target error must lie in (0, 1)");
    if (!(mean_neighbors > 0.0)) throw ConfigError("mean neighbor count must be > 0");
    if (population < 1) throw ConfigError("population must be >= 1");
    const double rho = mean_neighbors / static_cast<double>(population);

    auto evaluate = [&](std::uint64_t k) {
        RandomAccessPlan p;
        p.frames = k;
        p.theta = optimal_transmit_probability(population, rho, k);
        p.miss = random_access_miss(population, rho, p.theta, k);
        return p;
    };

    // The theta-optimized miss is nonincreasing in k: bracket, then bisect.
    std::uint64_t hi = 1;
    RandomAccessPlan best = evaluate(hi);
    while (best.miss > target) {
        if (hi > (std::uint64_t{1} << 40)) throw ConfigError("target error unreachable");
        hi *= 2;
        best = evaluate(hi);
    }
    std::uint64_t lo = hi / 2;  // miss(lo) > target, or lo == 0
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        RandomAccessPlan p = evaluate(mid);
        if (p.miss <= target) {
            hi = mid;
            best = p;
        } else {
            lo = mid;
        }
    }
    if (best.frames != hi) best = evaluate(hi);
    best.symbols = best.frames * ((bits_per_frame + 1) / 2);
    return best;
}

TimingReport discovery_time_report(std::uint64_t symbols, double symbol_interval,
                                   std::uint64_t frames, double frame_duration) {
    if (!(symbol_interval > 0.0) || !(frame_duration > 0.0))
        throw ConfigError("durations must be positive");
    TimingReport t;
    t.compressed_seconds = static_cast<double>(symbols) * symbol_interval;
    t.random_access_seconds = static_cast<double>(frames) * frame_duration;
    return t;
}

}  // namespace cnd
