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

#ifndef CND_GF2_HPP
#define CND_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cnd::gf2 {

/// Packed bit vector, bit i lives in word i / 64.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const noexcept { return bits_; }
    bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool v = true) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        words_[i / 64] = v ? (words_[i / 64] | mask) : (words_[i / 64] & ~mask);
    }
    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    BitVec& operator^=(const BitVec& other) noexcept;
    bool any() const noexcept;
    /// Index of the lowest set bit, or size() if none.
    std::size_t lowest() const noexcept;

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Incremental Gaussian elimination that remembers how each pivot was built,
/// so targets can be expressed as combinations of the inserted vectors.
class LinearSpan {
public:
    explicit LinearSpan(std::size_t bits) : bits_(bits) {}

    /// Adds vector number `count()`. Returns false if it was dependent.
    bool insert(const BitVec& v);

    std::size_t count() const noexcept { return inserted_; }
    std::size_t rank() const noexcept { return pivots_.size(); }

    /// Combination x (bit i = use inserted vector i) with sum x_i v_i == target,
    /// or nullopt if target is outside the span. When the inserted vectors are
    /// independent the answer is unique.
    std::optional<BitVec> solve(const BitVec& target) const;

private:
    struct Pivot {
        std::size_t bit;
        BitVec value;
        std::vector<std::uint8_t> recipe;  // recipe[i] = 1 if inserted vector i is used
    };
    std::size_t bits_;
    std::size_t inserted_ = 0;
    std::vector<Pivot> pivots_;
};

std::size_t rank(const std::vector<BitVec>& vectors);

}  // namespace cnd::gf2

#endif  // CND_GF2_HPP
