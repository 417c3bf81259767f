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

#include "cnd/random_signatures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cnd/rng.hpp"

namespace cnd {

OnOffCodebook::OnOffCodebook(std::size_t length, std::vector<std::vector<std::uint32_t>> columns)
    : length_(length), columns_(std::move(columns)) {
    for (const auto& col : columns_) {
        if (!std::is_sorted(col.begin(), col.end()) ||
            std::adjacent_find(col.begin(), col.end()) != col.end())
            throw ShapeError("on-slot list must be strictly increasing");
        if (!col.empty() && col.back() >= length_) throw ShapeError("on-slot index beyond length");
    }
}

OnOffCodebook OnOffCodebook::from_binary(const std::vector<std::vector<int>>& columns) {
    const std::size_t length = columns.empty() ? 0 : columns.front().size();
    std::vector<std::vector<std::uint32_t>> slots(columns.size());
    for (std::size_t n = 0; n < columns.size(); ++n) {
        if (columns[n].size() != length) throw ShapeError("ragged codebook columns");
        for (std::size_t m = 0; m < length; ++m)
            if (columns[n][m] != 0) slots[n].push_back(static_cast<std::uint32_t>(m));
    }
    return OnOffCodebook(length, std::move(slots));
}

bool OnOffCodebook::pulse(Nia nia, std::size_t slot) const {
    const auto& col = on_slots(nia);
    return std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(slot));
}

RandomCodebook::RandomCodebook(std::uint64_t population, std::size_t length, double q,
                               std::uint64_t key)
    : population_(population), length_(length), q_(q), key_(key) {
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("on-fraction q must lie in (0, 1)");
    if (length < 1) throw ConfigError("signature length must be >= 1");
    if (population < 1) throw ConfigError("population must be >= 1");
}

bool RandomCodebook::pulse(Nia nia, std::size_t slot) const noexcept {
    return keyed_uniform(key_, StreamTag::signature_bits, nia, slot) < q_;
}

std::vector<std::uint32_t> RandomCodebook::on_slots(Nia nia) const {
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(q_ * static_cast<double>(length_) * 1.5) + 8);
    for (std::size_t m = 0; m < length_; ++m)
        if (pulse(nia, m)) out.push_back(static_cast<std::uint32_t>(m));
    return out;
}

OnOffSignature RandomCodebook::signature(Nia nia) const {
    if (nia >= population_)
        throw AddressError("NIA " + std::to_string(nia) + " outside [0, " +
                           std::to_string(population_) + ")");
    OnOffSignature s;
    s.nia = nia;
    s.length = length_;
    s.slots = on_slots(nia);
    s.values.assign(s.slots.size(), cplx{1.0, 0.0});
    return s;
}

OnOffCodebook RandomCodebook::materialize() const {
    std::vector<std::vector<std::uint32_t>> columns(population_);
    for (Nia n = 0; n < population_; ++n) columns[n] = on_slots(n);
    return OnOffCodebook(length_, std::move(columns));
}

OnOffSignature gen_onoff_signature(Nia nia, std::size_t length, double q, std::uint64_t key) {
    // Population is irrelevant for a single column; use the widest range.
    return RandomCodebook(nia + 1, length, q, key).signature(nia);
}

OnOffSignature randomize_phases(const OnOffSignature& sig, Nia nia, std::uint64_t phase_key) {
    OnOffSignature out = sig;
    for (std::size_t k = 0; k < out.slots.size(); ++k) {
        const double theta = 2.0 * std::numbers::pi *
                             keyed_uniform(phase_key, StreamTag::signature_phase, nia, out.slots[k]);
        out.values[k] *= std::polar(1.0, theta);
    }
    return out;
}

}  // namespace cnd
