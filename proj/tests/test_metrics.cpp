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

#include <cmath>

#include "cnd/metrics.hpp"

using namespace cnd;

namespace {

// Full binomial sum with no truncation.
double direct_miss(std::uint64_t n, double rho, double theta, std::uint64_t k) {
    double sum = 0.0;
    for (std::uint64_t z = 1; z <= n; ++z) {
        const double log_w = std::lgamma(n + 1.0) - std::lgamma(z + 1.0) - std::lgamma(n - z + 1.0) +
                             z * std::log(rho) + (n - z) * std::log1p(-rho);
        const double alone = theta * std::pow(1.0 - theta, double(z - 1));
        sum += std::exp(log_w) * std::pow(1.0 - alone, double(k));
    }
    return sum;
}

}  // namespace

TEST(ErrorCounter, CountsAndPooledRates) {
    ErrorCounter a;
    a.add({1, 2, 3, 4}, {2, 3, 9});
    EXPECT_EQ(a.misses, 2U);
    EXPECT_EQ(a.false_alarms, 1U);
    EXPECT_EQ(a.true_neighbors, 4U);
    ErrorCounter b;
    b.add({5, 6, 7, 8, 9, 10}, {5, 6, 7, 8, 9, 10});
    b.add({}, {1});
    a.merge(b);
    const ErrorRates r = a.rates();
    EXPECT_EQ(r.trials, 3U);
    EXPECT_DOUBLE_EQ(r.miss_rate, 0.2);
    EXPECT_DOUBLE_EQ(r.false_alarm_rate, 0.2);
    EXPECT_DOUBLE_EQ(r.total(), 0.4);
    EXPECT_DOUBLE_EQ(r.mean_neighbors, 10.0 / 3.0);
}

TEST(ErrorCounter, EmptyTruth) {
    const ErrorRates r = error_rates({}, {});
    EXPECT_EQ(r.miss_rate, 0.0);
    EXPECT_EQ(r.false_alarm_rate, 0.0);
    EXPECT_EQ(error_rates({3}, {}).miss_rate, 1.0);
}

// Log-domain terms summed over ~10^2 binomial weights carry ~1e-11 rounding.
TEST(RandomAccess, Limits) {
    const double rho = 10.0 / 9999.0;
    const double active = 1.0 - std::pow(1.0 - rho, 9999.0);
    EXPECT_NEAR(random_access_miss(9999, rho, 0.0, 50), active, 1e-10);
    EXPECT_NEAR(random_access_miss(9999, rho, 0.1, 0), active, 1e-10);
    EXPECT_EQ(random_access_miss(9999, 0.0, 0.1, 50), 0.0);
    // theta = 1: heard alone only when no other neighbor exists.
    EXPECT_NEAR(random_access_miss(100, 0.05, 1.0, 7), direct_miss(100, 0.05, 1.0, 7), 1e-12);
}

TEST(RandomAccess, AgreesWithFullSum) {
    for (auto [n, rho, theta, k] : {std::tuple{50U, 0.1, 0.2, 20U}, std::tuple{400U, 0.025, 0.08, 150U},
                                    std::tuple{2000U, 0.015, 0.03, 500U}}) {
        const double full = direct_miss(n, rho, theta, k);
        EXPECT_NEAR(random_access_miss(n, rho, theta, k), full, 1e-12 + 1e-9 * full);
        EXPECT_NEAR(random_access_miss(n, rho, theta, k, 1e-30), full, 1e-12 + 1e-9 * full);
    }
}

TEST(RandomAccess, MissFallsWithFrames) {
    double last = 1.0;
    for (std::uint64_t k = 0; k < 400; k += 20) {
        const double p = random_access_miss(9999, 10.0 / 9999.0, 0.07, k);
        EXPECT_LE(p, last);
        last = p;
    }
}

TEST(RandomAccess, FrameCountsAtTwoTenthsPercent) {
    const auto low = min_frames_random_access(10000, 10.0, 0.002, 14);
    const auto high = min_frames_random_access(10000, 30.0, 0.002, 14);
    EXPECT_NEAR(double(low.frames), 194.0, 2.0);
    EXPECT_NEAR(double(high.frames), 534.0, 2.0);
    EXPECT_LE(low.miss, 0.002);
    EXPECT_LE(high.miss, 0.002);
    EXPECT_EQ(low.symbols, low.frames * 7);
    EXPECT_EQ(high.symbols, high.frames * 7);
    const auto wide = min_frames_random_access(1048576, 10.0, 0.002, 20);
    EXPECT_EQ(wide.symbols, wide.frames * 10);
    EXPECT_NEAR(double(wide.symbols), 1940.0, 20.0);
    // k* is minimal: one frame fewer misses the target at every theta tried.
    for (double theta = 0.01; theta < 0.3; theta += 0.005)
        EXPECT_GT(random_access_miss(9999, 10.0 / 9999.0, theta, low.frames - 1), 0.002);
}

TEST(RandomAccess, OptimalThetaNearOneOverC) {
    const double theta = optimal_transmit_probability(9999, 10.0 / 9999.0, 194);
    EXPECT_GT(theta, 0.05);
    EXPECT_LT(theta, 0.1);
    const double at = random_access_miss(9999, 10.0 / 9999.0, theta, 194);
    EXPECT_LE(at, random_access_miss(9999, 10.0 / 9999.0, theta * 1.1, 194));
    EXPECT_LE(at, random_access_miss(9999, 10.0 / 9999.0, theta * 0.9, 194));
}

TEST(RandomAccess, BadArguments) {
    EXPECT_THROW(min_frames_random_access(10000, 10.0, 0.0, 14), ConfigError);
    EXPECT_THROW(min_frames_random_access(10000, 10.0, 1.0, 14), ConfigError);
    EXPECT_THROW(min_frames_random_access(10000, 0.0, 0.002, 14), ConfigError);
}

TEST(Timing, Report) {
    const auto r = discovery_time_report(1024, 4e-6, 194, 850e-6);
    EXPECT_NEAR(r.compressed_seconds, 4.096e-3, 1e-12);
    EXPECT_NEAR(r.random_access_seconds, 0.1649, 1e-9);
    EXPECT_THROW(discovery_time_report(1024, 0.0, 194, 850e-6), ConfigError);
    EXPECT_THROW(discovery_time_report(1024, 4e-6, 194, -1.0), ConfigError);
}
