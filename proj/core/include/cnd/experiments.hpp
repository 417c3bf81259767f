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

// Monte Carlo orchestration. A trial is one query node of one network
// realization; every SNR point reuses the same realizations and differs only
// in the noise draw.

#ifndef CND_EXPERIMENTS_HPP
#define CND_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnd/group_testing.hpp"
#include "cnd/metrics.hpp"
#include "cnd/scenario.hpp"

namespace cnd {

struct ResultRow {
    double snr_db = 0.0;
    ErrorCounter counts;
    double wall_time = 0.0;  // seconds, summed over workers

    ErrorRates rates() const noexcept { return counts.rates(); }
};

/// Rows in snr_db order. Deterministic in (scenario, master_seed) and
/// independent of the worker count.
std::vector<ResultRow> run_scenario(const Scenario& s);

struct NearFarBin {
    double lo_db = 0.0;  // 10 log10 |U|^2, inclusive
    double hi_db = 0.0;  // exclusive; +inf for the last bin
    std::uint64_t neighbors = 0;
    std::uint64_t misses = 0;

    /// nullopt for an empty bin.
    std::optional<double> miss_rate() const noexcept;
};

/// Misses binned by link power gain 10 log10 |U|^2 at one SNR. `edges` are
/// ascending bin boundaries; the last bin is open above. rm-chirp only.
std::vector<NearFarBin> sweep_near_far(const Scenario& s, double snr_db, const std::vector<double>& edges);

/// Grid search for (q, T) at one SNR under the scenario's random-gt setup.
/// Each grid point runs `s.realizations` x `s.query_nodes` trials.
GridSearchResult optimize_parameters(const Scenario& s, double reference_snr_db,
                                     const std::vector<double>& q_grid,
                                     const std::vector<double>& threshold_grid);

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);

/// CSV header snr_db,miss_rate,false_alarm_rate,trials; 6 significant digits.
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& out);
/// Throws IoError if the file cannot be written.
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path);

struct ParsedRow {
    double snr_db = 0.0;
    double miss_rate = 0.0;
    double false_alarm_rate = 0.0;
    std::uint64_t trials = 0;
};

/// Reads back what emit_results wrote in CSV form.
std::vector<ParsedRow> parse_results_csv(std::istream& in);

/// Six significant digits, as used in every emitted table.
std::string format_number(double x);

}  // namespace cnd

#endif  // CND_EXPERIMENTS_HPP
