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

#ifndef CND_RANDOM_SIGNATURES_HPP
#define CND_RANDOM_SIGNATURES_HPP

#include <cstdint>
#include <vector>

#include "cnd/types.hpp"

namespace cnd {

/// Key of the codebook that every node shares. Changing it yields a
/// different (equally valid) random codebook.
inline constexpr std::uint64_t default_codebook_key = 0x5eed'c0de'b00cULL;

/// On-slot lists for NIAs 0..population-1, the view the group-testing
/// decoders work on. Values are irrelevant to noncoherent detection, so only
/// positions are stored.
class OnOffCodebook {
public:
    OnOffCodebook() = default;
    OnOffCodebook(std::size_t length, std::vector<std::vector<std::uint32_t>> columns);

    /// Build from 0/1 columns, one per NIA. Throws ShapeError on ragged input.
    static OnOffCodebook from_binary(const std::vector<std::vector<int>>& columns);

    std::size_t length() const noexcept { return length_; }
    std::uint64_t population() const noexcept { return columns_.size(); }
    const std::vector<std::uint32_t>& on_slots(Nia nia) const { return columns_.at(nia); }
    bool pulse(Nia nia, std::size_t slot) const;

private:
    std::size_t length_ = 0;
    std::vector<std::vector<std::uint32_t>> columns_;
};

/// i.i.d. Bernoulli(q) on-off codebook keyed by NIA.
class RandomCodebook {
public:
    /// Throws ConfigError unless 0 < q < 1, length >= 1, population >= 1.
    RandomCodebook(std::uint64_t population, std::size_t length, double q,
                   std::uint64_t key = default_codebook_key);

    std::uint64_t population() const noexcept { return population_; }
    std::size_t length() const noexcept { return length_; }
    double on_fraction() const noexcept { return q_; }
    std::uint64_t key() const noexcept { return key_; }

    /// S_mn != 0, evaluated directly from the key in O(1).
    bool pulse(Nia nia, std::size_t slot) const noexcept;

    std::vector<std::uint32_t> on_slots(Nia nia) const;

    /// Unit-valued signature (no phase randomization).
    OnOffSignature signature(Nia nia) const;

    /// Materialize all on-slot lists. O(population * length) hash evaluations.
    OnOffCodebook materialize() const;

private:
    std::uint64_t population_;
    std::size_t length_;
    double q_;
    std::uint64_t key_;
};

/// Stand-alone signature draw with the default codebook key.
OnOffSignature gen_onoff_signature(Nia nia, std::size_t length, double q,
                                   std::uint64_t key = default_codebook_key);

/// Multiply each on-entry by exp(j theta), theta uniform and keyed by
/// (phase_key, nia, slot). Off entries and magnitudes are left alone.
OnOffSignature randomize_phases(const OnOffSignature& sig, Nia nia, std::uint64_t phase_key = 0);

}  // namespace cnd

#endif  // CND_RANDOM_SIGNATURES_HPP
