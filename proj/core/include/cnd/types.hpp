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

#ifndef CND_TYPES_HPP
#define CND_TYPES_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnd {

using cplx = std::complex<double>;

/// Network interface address. Valid addresses are [0, population).
using Nia = std::uint64_t;

// Error taxonomy. Configuration problems map to CLI exit code 2 and I/O
// failures to exit code 3.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CodebookError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AddressError : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One column of the signature matrix, stored sparsely.
///
/// Entries not listed in `slots` are off (exactly zero). Listed entries have
/// unit magnitude. `slots` is strictly increasing.
struct OnOffSignature {
    Nia nia = 0;
    std::size_t length = 0;
    std::vector<std::uint32_t> slots;
    std::vector<cplx> values;

    std::size_t on_count() const noexcept { return slots.size(); }
    std::vector<cplx> dense() const;
    /// Binary on/off indicator of length `length`.
    std::vector<std::uint8_t> on_mask() const;

    static OnOffSignature from_dense(Nia nia, const std::vector<cplx>& entries);
};

/// The received vector, optionally with the observer's own on-slots erased.
struct MeasurementVector {
    std::vector<cplx> samples;
    /// Empty means nothing erased; otherwise one flag per sample, 1 = erased.
    std::vector<std::uint8_t> erasure_mask;

    std::size_t size() const noexcept { return samples.size(); }
    bool erased(std::size_t m) const noexcept {
        return !erasure_mask.empty() && erasure_mask[m] != 0;
    }
    std::size_t erased_count() const noexcept;
};

/// Sparse support vector X: NIA -> B_n U_n (scaled link coefficient).
struct SupportVector {
    std::uint64_t population = 0;
    std::map<Nia, cplx> entries;
};

}  // namespace cnd

#endif  // CND_TYPES_HPP
