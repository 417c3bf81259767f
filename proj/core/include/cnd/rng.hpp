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

#ifndef CND_RNG_HPP
#define CND_RNG_HPP

#include <complex>
#include <cstdint>
#include <limits>

namespace cnd {

// Purpose tags keep the keyed streams of different consumers disjoint, so
// e.g. codeword bits and erasure bits of the same NIA never share draws.
enum class StreamTag : std::uint64_t {
    network_points = 0x01,
    node_fading = 0x02,
    pair_fading = 0x03,
    link_phase = 0x04,
    noise = 0x05,
    signature_bits = 0x06,
    signature_phase = 0x07,
    rm_erasure = 0x08,
    nia_assignment = 0x09,
    neighbor_gain = 0x0a,
    trial = 0x0b,
    test_data = 0xff,
};

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Folds a tuple of words into one key. Order matters.
constexpr std::uint64_t hash_key(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc908ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(tag));
    h = mix64(h ^ a);
    h = mix64(h ^ (b * 0xd1b54a32d192ed03ULL));
    h = mix64(h ^ (c * 0x8cb92ba72f3d8dd7ULL));
    return h;
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Counter-based deterministic stream keyed by (seed, tag, index, sub).
///
/// Draw k of a stream is a pure function of the key and k, so any stream can
/// be reconstructed independently of evaluation order or thread. Satisfies
/// UniformRandomBitGenerator.
class KeyedStream {
public:
    using result_type = std::uint64_t;

    KeyedStream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0,
                std::uint64_t sub = 0) noexcept
        : key_(hash_key(seed, tag, index, sub)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform on [0, 1).
    double uniform() noexcept { return to_unit(next_u64()); }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_open() noexcept { return 1.0 - uniform(); }

    /// Uniform integer in [0, n) by rejection, unbiased. n > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

    /// Unit-mean exponential.
    double exponential() noexcept;

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1 (variance 1/2
    /// per real dimension), Box-Muller.
    std::complex<double> complex_normal() noexcept;

    /// Poisson count by counting unit-rate exponential arrivals before `mean`.
    /// Linear in the mean, exact, and platform independent.
    std::uint64_t poisson(double mean) noexcept;

    std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Stateless single draw: uniform [0,1) for coordinate (seed, tag, a, b).
inline double keyed_uniform(std::uint64_t seed, StreamTag tag, std::uint64_t a,
                            std::uint64_t b = 0) noexcept {
    return to_unit(mix64(hash_key(seed, tag, a, b)));
}

}  // namespace cnd

#endif  // CND_RNG_HPP
