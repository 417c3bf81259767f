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

#include "cnd/types.hpp"

#include <algorithm>

namespace cnd {

std::vector<cplx> OnOffSignature::dense() const {
    std::vector<cplx> out(length, cplx{});
    for (std::size_t k = 0; k < slots.size(); ++k) out[slots[k]] = values[k];
    return out;
}

std::vector<std::uint8_t> OnOffSignature::on_mask() const {
    std::vector<std::uint8_t> out(length, 0);
    for (std::uint32_t m : slots) out[m] = 1;
    return out;
}

OnOffSignature OnOffSignature::from_dense(Nia nia, const std::vector<cplx>& entries) {
    OnOffSignature s;
    s.nia = nia;
    s.length = entries.size();
    for (std::size_t m = 0; m < entries.size(); ++m) {
        if (entries[m] == cplx{}) continue;
        s.slots.push_back(static_cast<std::uint32_t>(m));
        s.values.push_back(entries[m]);
    }
    return s;
}

std::size_t MeasurementVector::erased_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(erasure_mask.begin(), erasure_mask.end(), [](std::uint8_t e) { return e != 0; }));
}

}  // namespace cnd
