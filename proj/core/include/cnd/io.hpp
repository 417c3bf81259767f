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

// JSON forms of realizations, measurements, signatures and decode results.
// Complex numbers are [re, im] pairs.

#ifndef CND_IO_HPP
#define CND_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "cnd/channel.hpp"
#include "cnd/chirp_decoder.hpp"
#include "cnd/rm_code.hpp"
#include "cnd/types.hpp"

namespace cnd {

using json = nlohmann::ordered_json;

json to_json(const NetworkRealization& real);
/// Throws ShapeError on a malformed document.
NetworkRealization realization_from_json(const json& j);

json to_json(const MeasurementVector& y);
MeasurementVector measurement_from_json(const json& j);

json to_json(const OnOffSignature& s);
json to_json(const SymMatrix& p);
json to_json(const DiscoveryResult& r);

/// Everything about one RM address: b, c, P(c), codeword, erasure, signature.
json describe_rm_signature(Nia nia, const RmCodebook& book);

/// Throws IoError on failure.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string bits_string(std::uint64_t value, unsigned width);

}  // namespace cnd

#endif  // CND_IO_HPP
