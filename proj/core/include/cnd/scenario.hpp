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

// Monte Carlo scenario description and its flat key = value text form.

#ifndef CND_SCENARIO_HPP
#define CND_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cnd/channel.hpp"
#include "cnd/chirp_decoder.hpp"
#include "cnd/random_signatures.hpp"
#include "cnd/rm_code.hpp"

namespace cnd {

enum class Scheme { random_gt, rm_chirp };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& text);  // "random-gt" | "rm-chirp"

struct Scenario {
    Scheme scheme = Scheme::random_gt;
    std::uint64_t population = 10000;
    double mean_neighbors = 10.0;

    // random-gt
    std::size_t length = 1024;
    double on_fraction = 0.0371;
    double threshold = 3.0;
    unsigned tolerance = 3;
    bool phase_randomization = true;
    std::uint64_t codebook_key = default_codebook_key;

    // rm-chirp
    unsigned m = 10;
    unsigned m0 = 1;
    unsigned n1 = 10;
    unsigned n2 = 10;
    unsigned max_iterations = 0;    // 0: ceil(3 c)
    double accept_threshold = 0.0;  // 0: sqrt(snr eta) / 2, per SNR point
    unsigned weak_limit = 5;
    unsigned row_candidates = 16;
    ShiftMode shift = ShiftMode::dyadic;

    // channel
    double path_loss_exponent = 3.0;
    double neighbor_threshold = 0.05;
    double intensity = 0.0;          // 0: chosen so the mean neighbor count is c
    double region_half_width = 0.0;  // 0: sized around the query nodes

    std::vector<double> snr_db{26.0};
    unsigned realizations = 10;
    unsigned query_nodes = 100;
    bool network_wide = false;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;

    /// Throws ConfigError with a message naming the offending key.
    void validate() const;

    double resolved_intensity() const;
    double resolved_half_width() const;
    NetworkConfig network_config() const;
    RmCodebookParams rm_params() const;
    ChirpParams chirp_params(double snr_linear) const;
    std::uint64_t trials() const noexcept { return std::uint64_t{realizations} * query_nodes; }
};

/// Set one key from its text value. Throws ConfigError on an unknown key or
/// a malformed value.
void apply_setting(Scenario& s, const std::string& key, const std::string& value);

/// Parse "key = value" lines; '#' starts a comment. Later keys win.
Scenario parse_scenario(std::istream& in, Scenario base = {});
Scenario load_scenario(const std::string& path, Scenario base = {});

/// Fully resolved configuration in the same text format, one key per line.
std::string format_scenario(const Scenario& s);

double db_to_linear(double db) noexcept;

}  // namespace cnd

#endif  // CND_SCENARIO_HPP
