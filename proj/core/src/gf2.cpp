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

#include "cnd/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cnd::gf2 {

BitVec& BitVec::operator^=(const BitVec& other) noexcept {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < n; ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool BitVec::any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVec::lowest() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return bits_;
}

namespace {

void xor_recipe(std::vector<std::uint8_t>& into, const std::vector<std::uint8_t>& from) {
    if (into.size() < from.size()) into.resize(from.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) into[i] ^= from[i];
}

}  // namespace

bool LinearSpan::insert(const BitVec& v) {
    if (v.size() != bits_) throw std::invalid_argument("gf2::LinearSpan: vector width mismatch");
    BitVec value = v;
    std::vector<std::uint8_t> recipe(inserted_ + 1, 0);
    recipe[inserted_] = 1;
    ++inserted_;
    // Pivots are kept fully reduced: no pivot has another pivot's bit set.
    for (const Pivot& p : pivots_) {
        if (value.get(p.bit)) {
            value ^= p.value;
            xor_recipe(recipe, p.recipe);
        }
    }
    if (!value.any()) return false;
    const std::size_t bit = value.lowest();
    for (Pivot& p : pivots_) {
        if (p.value.get(bit)) {
            p.value ^= value;
            xor_recipe(p.recipe, recipe);
        }
    }
    pivots_.push_back({bit, std::move(value), std::move(recipe)});
    return true;
}

std::optional<BitVec> LinearSpan::solve(const BitVec& target) const {
    if (target.size() != bits_) throw std::invalid_argument("gf2::LinearSpan: target width mismatch");
    BitVec rest = target;
    std::vector<std::uint8_t> recipe;
    for (const Pivot& p : pivots_) {
        if (rest.get(p.bit)) {
            rest ^= p.value;
            xor_recipe(recipe, p.recipe);
        }
    }
    if (rest.any()) return std::nullopt;
    BitVec x(inserted_);
    for (std::size_t i = 0; i < recipe.size(); ++i)
        if (recipe[i]) x.set(i);
    return x;
}

std::size_t rank(const std::vector<BitVec>& vectors) {
    if (vectors.empty()) return 0;
    LinearSpan span(vectors.front().size());
    for (const BitVec& v : vectors) span.insert(v);
    return span.rank();
}

}  // namespace cnd::gf2
