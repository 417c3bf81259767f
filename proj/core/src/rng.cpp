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

#include "cnd/rng.hpp"

#include <cmath>
#include <numbers>

namespace cnd {

std::uint64_t KeyedStream::below(std::uint64_t n) noexcept {
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = max() - (max() % n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
}

double KeyedStream::exponential() noexcept { return -std::log(uniform_open()); }

std::complex<double> KeyedStream::complex_normal() noexcept {
    const double radius = std::sqrt(-std::log(uniform_open()));  // |z|^2 ~ Exp(1)
    const double angle = 2.0 * std::numbers::pi * uniform();
    return std::polar(radius, angle);
}

std::uint64_t KeyedStream::poisson(double mean) noexcept {
    if (!(mean > 0.0)) return 0;
    std::uint64_t count = 0;
    double t = exponential();
    while (t < mean) {
        ++count;
        t += exponential();
    }
    return count;
}

}  // namespace cnd
