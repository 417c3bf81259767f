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

#include "cnd/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace cnd {

namespace {

// Largest fading mark we plan room for: P(G > 20.7) is about 1e-9.
constexpr double fading_margin = 20.7;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    int base = 10;
    std::string_view text(v);
    if (text.starts_with("0x") || text.starts_with("0X")) {
        base = 16;
        text.remove_prefix(2);
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x, base);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" + v + "'");
    return x;
}

unsigned to_unsigned(const std::string& key, const std::string& v) {
    const std::uint64_t x = to_u64(key, v);
    if (x > 0xffffffffULL) throw ConfigError("key '" + key + "': value too large");
    return static_cast<unsigned>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    std::string t = v;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
    if (t == "0" || t == "false" || t == "off" || t == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::string text = v;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<double> out;
    std::string item;
    while (in >> item) out.push_back(to_double(key, item));
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

using Setter = std::function<void(Scenario&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scheme", [](Scenario& s, auto&, auto& v) { s.scheme = parse_scheme(v); }},
        {"population", [](Scenario& s, auto& k, auto& v) { s.population = to_u64(k, v); }},
        {"mean_neighbors", [](Scenario& s, auto& k, auto& v) { s.mean_neighbors = to_double(k, v); }},
        {"length", [](Scenario& s, auto& k, auto& v) { s.length = to_u64(k, v); }},
        {"on_fraction", [](Scenario& s, auto& k, auto& v) { s.on_fraction = to_double(k, v); }},
        {"threshold", [](Scenario& s, auto& k, auto& v) { s.threshold = to_double(k, v); }},
        {"tolerance", [](Scenario& s, auto& k, auto& v) { s.tolerance = to_unsigned(k, v); }},
        {"phase_randomization",
         [](Scenario& s, auto& k, auto& v) { s.phase_randomization = to_bool(k, v); }},
        {"codebook_key", [](Scenario& s, auto& k, auto& v) { s.codebook_key = to_u64(k, v); }},
        {"m", [](Scenario& s, auto& k, auto& v) { s.m = to_unsigned(k, v); }},
        {"m0", [](Scenario& s, auto& k, auto& v) { s.m0 = to_unsigned(k, v); }},
        {"n1", [](Scenario& s, auto& k, auto& v) { s.n1 = to_unsigned(k, v); }},
        {"n2", [](Scenario& s, auto& k, auto& v) { s.n2 = to_unsigned(k, v); }},
        {"max_iterations", [](Scenario& s, auto& k, auto& v) { s.max_iterations = to_unsigned(k, v); }},
        {"accept_threshold",
         [](Scenario& s, auto& k, auto& v) { s.accept_threshold = to_double(k, v); }},
        {"weak_limit", [](Scenario& s, auto& k, auto& v) { s.weak_limit = to_unsigned(k, v); }},
        {"row_candidates", [](Scenario& s, auto& k, auto& v) { s.row_candidates = to_unsigned(k, v); }},
        {"shift",
         [](Scenario& s, auto& k, auto& v) {
             if (v == "dyadic") s.shift = ShiftMode::dyadic;
             else if (v == "cyclic") s.shift = ShiftMode::cyclic;
             else throw ConfigError("key '" + k + "': expected dyadic or cyclic");
         }},
        {"path_loss_exponent",
         [](Scenario& s, auto& k, auto& v) { s.path_loss_exponent = to_double(k, v); }},
        {"neighbor_threshold",
         [](Scenario& s, auto& k, auto& v) { s.neighbor_threshold = to_double(k, v); }},
        {"intensity", [](Scenario& s, auto& k, auto& v) { s.intensity = to_double(k, v); }},
        {"region_half_width",
         [](Scenario& s, auto& k, auto& v) { s.region_half_width = to_double(k, v); }},
        {"snr_db", [](Scenario& s, auto& k, auto& v) { s.snr_db = to_list(k, v); }},
        {"realizations", [](Scenario& s, auto& k, auto& v) { s.realizations = to_unsigned(k, v); }},
        {"query_nodes", [](Scenario& s, auto& k, auto& v) { s.query_nodes = to_unsigned(k, v); }},
        {"network_wide", [](Scenario& s, auto& k, auto& v) { s.network_wide = to_bool(k, v); }},
        {"master_seed", [](Scenario& s, auto& k, auto& v) { s.master_seed = to_u64(k, v); }},
        {"workers", [](Scenario& s, auto& k, auto& v) { s.workers = to_unsigned(k, v); }},
    };
    return table;
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> table = {
        {"N", "population"}, {"c", "mean_neighbors"},    {"M", "length"},
        {"q", "on_fraction"}, {"T", "threshold"},        {"t", "tolerance"},
        {"alpha", "path_loss_exponent"},                 {"eta", "neighbor_threshold"},
        {"lambda", "intensity"}, {"seed", "master_seed"}, {"T_max", "max_iterations"},
        {"eta0", "accept_threshold"}, {"n0", "weak_limit"},
    };
    return table;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::random_gt ? "random-gt" : "rm-chirp"; }

Scheme parse_scheme(const std::string& text) {
    if (text == "random-gt" || text == "random") return Scheme::random_gt;
    if (text == "rm-chirp" || text == "rm") return Scheme::rm_chirp;
    throw ConfigError("unknown scheme '" + text + "' (expected random-gt or rm-chirp)");
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

void Scenario::validate() const {
    if (!(mean_neighbors > 0.0)) throw ConfigError("mean_neighbors must be > 0");
    if (!(path_loss_exponent > 0.0)) throw ConfigError("path_loss_exponent must be > 0");
    if (!(neighbor_threshold > 0.0)) throw ConfigError("neighbor_threshold must be > 0");
    if (intensity < 0.0) throw ConfigError("intensity must be >= 0");
    if (region_half_width < 0.0) throw ConfigError("region_half_width must be >= 0");
    if (realizations < 1) throw ConfigError("realizations must be >= 1");
    if (query_nodes < 1) throw ConfigError("query_nodes must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    for (double snr : snr_db)
        if (!std::isfinite(snr)) throw ConfigError("snr_db entries must be finite");
    if (scheme == Scheme::random_gt) {
        if (population < 1) throw ConfigError("population must be >= 1");
        if (length < 1) throw ConfigError("length must be >= 1");
        if (!(on_fraction > 0.0 && on_fraction < 1.0)) throw ConfigError("on_fraction must lie in (0, 1)");
        if (!(threshold > 0.0)) throw ConfigError("threshold must be > 0");
    } else {
        rm_params().validate();
        if (accept_threshold < 0.0) throw ConfigError("accept_threshold must be >= 0");
        if (weak_limit < 1) throw ConfigError("weak_limit must be >= 1");
        if (row_candidates < 1) throw ConfigError("row_candidates must be >= 1");
    }
    network_config().validate();
}

double Scenario::resolved_intensity() const {
    if (intensity > 0.0) return intensity;
    return intensity_for_neighbors(mean_neighbors, path_loss_exponent, neighbor_threshold);
}

double Scenario::resolved_half_width() const {
    if (region_half_width > 0.0) return region_half_width;
    // Room for the query disc plus the farthest plausible neighbor of a node
    // on its rim.
    const double core = std::sqrt(query_nodes / (std::numbers::pi * resolved_intensity()));
    const double reach = std::pow(fading_margin / neighbor_threshold, 1.0 / path_loss_exponent);
    return 1.5 * core + reach;
}

NetworkConfig Scenario::network_config() const {
    NetworkConfig cfg;
    cfg.intensity = resolved_intensity();
    cfg.path_loss_exponent = path_loss_exponent;
    cfg.neighbor_threshold = neighbor_threshold;
    cfg.region_half_width = resolved_half_width();
    cfg.population = scheme == Scheme::rm_chirp ? rm_params().population() : population;
    cfg.addresses = AddressLayout::scattered;
    return cfg;
}

RmCodebookParams Scenario::rm_params() const {
    RmCodebookParams p;
    p.m = m;
    p.m0 = m0;
    p.n1 = n1;
    p.n2 = n2;
    p.erasures = true;
    return p;
}

ChirpParams Scenario::chirp_params(double snr_linear) const {
    ChirpParams p = ChirpParams::defaults(mean_neighbors, snr_linear, neighbor_threshold);
    if (max_iterations > 0) p.max_iterations = max_iterations;
    if (accept_threshold > 0.0) p.accept_threshold = accept_threshold;
    p.weak_limit = weak_limit;
    p.row_candidates = row_candidates;
    p.shift = shift;
    return p;
}

void apply_setting(Scenario& s, const std::string& raw_key, const std::string& value) {
    std::string key = raw_key;
    if (const auto a = aliases().find(key); a != aliases().end()) key = a->second;
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown configuration key '" + raw_key + "'");
    it->second(s, key, value);
}

Scenario parse_scenario(std::istream& in, Scenario base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

Scenario load_scenario(const std::string& path, Scenario base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    return parse_scenario(in, std::move(base));
}

std::string format_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "scheme = " << to_string(s.scheme) << '\n';
    os << "population = " << s.network_config().population << '\n';
    os << "mean_neighbors = " << fmt(s.mean_neighbors) << '\n';
    if (s.scheme == Scheme::random_gt) {
        os << "length = " << s.length << '\n';
        os << "on_fraction = " << fmt(s.on_fraction) << '\n';
        os << "threshold = " << fmt(s.threshold) << '\n';
        os << "tolerance = " << s.tolerance << '\n';
        os << "phase_randomization = " << (s.phase_randomization ? "true" : "false") << '\n';
        os << "codebook_key = " << s.codebook_key << '\n';
    } else {
        os << "m = " << s.m << "\nm0 = " << s.m0 << "\nn1 = " << s.n1 << "\nn2 = " << s.n2 << '\n';
        os << "max_iterations = " << s.chirp_params(1.0).max_iterations << '\n';
        os << "accept_threshold = " << fmt(s.accept_threshold) << "  # 0: per-SNR default\n";
        os << "weak_limit = " << s.weak_limit << '\n';
        os << "row_candidates = " << s.row_candidates << '\n';
        os << "shift = " << (s.shift == ShiftMode::dyadic ? "dyadic" : "cyclic") << '\n';
    }
    os << "path_loss_exponent = " << fmt(s.path_loss_exponent) << '\n';
    os << "neighbor_threshold = " << fmt(s.neighbor_threshold) << '\n';
    os << "intensity = " << fmt(s.resolved_intensity()) << '\n';
    os << "region_half_width = " << fmt(s.resolved_half_width()) << '\n';
    os << "snr_db = ";
    for (std::size_t i = 0; i < s.snr_db.size(); ++i) os << (i ? "," : "") << fmt(s.snr_db[i]);
    os << '\n';
    os << "realizations = " << s.realizations << '\n';
    os << "query_nodes = " << s.query_nodes << '\n';
    os << "network_wide = " << (s.network_wide ? "true" : "false") << '\n';
    os << "master_seed = " << s.master_seed << '\n';
    os << "workers = " << s.workers << '\n';
    return os.str();
}

}  // namespace cnd
