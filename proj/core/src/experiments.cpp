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

#include "cnd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "cnd/channel.hpp"
#include "cnd/chirp_decoder.hpp"
#include "cnd/rng.hpp"

namespace cnd {

namespace {

using Clock = std::chrono::steady_clock;

// Runs body(i) for i in [0, count) on up to `workers` threads. The first
// exception is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, workers), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> guard(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Codebooks shared read-only by all workers.
struct Books {
    std::unique_ptr<RandomCodebook> random;
    std::unique_ptr<OnOffCodebook> slots;
    std::unique_ptr<RmCodebook> rm;

    std::size_t length() const { return rm ? rm->length() : random->length(); }

    OnOffSignature signature(Nia nia) const { return rm ? rm->signature(nia) : random->signature(nia); }
};

Books make_books(const Scenario& s, std::optional<double> q_override = std::nullopt) {
    Books books;
    if (s.scheme == Scheme::rm_chirp) {
        books.rm = std::make_unique<RmCodebook>(s.rm_params());
    } else {
        books.random = std::make_unique<RandomCodebook>(s.population, s.length,
                                                        q_override.value_or(s.on_fraction), s.codebook_key);
        books.slots = std::make_unique<OnOffCodebook>(books.random->materialize());
    }
    return books;
}

struct QueryTrial {
    Nia own = 0;
    OnOffSignature own_signature;
    std::vector<Nia> truth;         // ascending
    std::vector<double> gain_db;    // aligned with truth, 10 log10 |U|^2
    SupportVector x;
    std::vector<OnOffSignature> signatures;  // one per neighbor
};

std::vector<QueryTrial> build_trials(const Scenario& s, const Books& books, std::size_t realization) {
    const std::uint64_t seed = hash_key(s.master_seed, StreamTag::trial, realization);
    const NetworkRealization real = sample_network(s.network_config(), seed);
    const std::uint64_t phase_key = hash_key(s.master_seed, StreamTag::signature_phase, realization);
    const bool phases = s.scheme == Scheme::random_gt && s.phase_randomization;

    std::map<Nia, OnOffSignature> cache;
    auto transmitted = [&](Nia nia) -> const OnOffSignature& {
        auto it = cache.find(nia);
        if (it == cache.end()) {
            OnOffSignature sig = books.signature(nia);
            if (phases) sig = randomize_phases(sig, nia, phase_key);
            it = cache.emplace(nia, std::move(sig)).first;
        }
        return it->second;
    };

    std::vector<QueryTrial> trials;
    for (std::size_t q : real.nearest_to_origin(s.query_nodes)) {
        QueryTrial t;
        t.own = real.nodes()[q].nia;
        t.own_signature = books.signature(t.own);
        t.x.population = s.network_config().population;
        std::vector<std::pair<Nia, double>> found;
        for (std::size_t n : neighbor_set(real, q)) {
            const LinkCoefficient u = real.link(n, q);
            const Nia nia = real.nodes()[n].nia;
            t.x.entries[nia] = u.value();
            found.emplace_back(nia, 20.0 * std::log10(u.magnitude));
            t.signatures.push_back(transmitted(nia));
        }
        std::sort(found.begin(), found.end());
        for (const auto& [nia, db] : found) {
            t.truth.push_back(nia);
            t.gain_db.push_back(db);
        }
        trials.push_back(std::move(t));
    }
    return trials;
}

MeasurementVector observe(const Scenario& s, const Books& books, const QueryTrial& t,
                          std::size_t realization, std::size_t query, std::size_t snr_index, double snr_db) {
    const std::uint64_t noise_seed =
        hash_key(s.master_seed, StreamTag::noise, realization, query, snr_index);
    MeasurementVector y =
        synthesize_received(t.signatures, t.x, db_to_linear(snr_db), books.length(), noise_seed);
    // The chirp decoder always listens through its own off-slots; group
    // testing does so only when every node discovers at once.
    if (s.scheme == Scheme::rm_chirp || s.network_wide) y = apply_self_erasure(y, t.own_signature);
    return y;
}

std::vector<Nia> decode(const Scenario& s, const Books& books, const QueryTrial& t,
                        const MeasurementVector& y, double snr_db, double threshold) {
    std::vector<Nia> estimate;
    if (s.scheme == Scheme::rm_chirp) {
        estimate = chirp_decode(y, *books.rm, s.chirp_params(db_to_linear(snr_db))).neighbors;
    } else {
        estimate = tolerance_group_test(y, *books.slots, threshold, s.tolerance);
    }
    // A node never reports itself.
    estimate.erase(std::remove(estimate.begin(), estimate.end(), t.own), estimate.end());
    return estimate;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<ResultRow> run_scenario(const Scenario& s) {
    s.validate();
    if (s.snr_db.empty()) return {};
    const Books books = make_books(s);

    // per_realization[r][i] holds the counts of SNR point i.
    std::vector<std::vector<ResultRow>> per_realization(s.realizations);
    parallel_for(s.realizations, s.workers, [&](std::size_t r) {
        auto& rows = per_realization[r];
        rows.resize(s.snr_db.size());
        const auto trials = build_trials(s, books, r);
        for (std::size_t i = 0; i < s.snr_db.size(); ++i) {
            const auto start = Clock::now();
            for (std::size_t k = 0; k < trials.size(); ++k) {
                const MeasurementVector y = observe(s, books, trials[k], r, k, i, s.snr_db[i]);
                rows[i].counts.add(trials[k].truth, decode(s, books, trials[k], y, s.snr_db[i], s.threshold));
            }
            rows[i].wall_time += seconds_since(start);
        }
    });

    std::vector<ResultRow> out(s.snr_db.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].snr_db = s.snr_db[i];
        for (const auto& rows : per_realization) {
            out[i].counts.merge(rows[i].counts);
            out[i].wall_time += rows[i].wall_time;
        }
    }
    return out;
}

std::optional<double> NearFarBin::miss_rate() const noexcept {
    if (neighbors == 0) return std::nullopt;
    return static_cast<double>(misses) / static_cast<double>(neighbors);
}

std::vector<NearFarBin> sweep_near_far(const Scenario& s, double snr_db, const std::vector<double>& edges) {
    s.validate();
    if (s.scheme != Scheme::rm_chirp) throw ConfigError("near-far sweep requires scheme rm-chirp");
    if (edges.empty() || !std::is_sorted(edges.begin(), edges.end()))
        throw ConfigError("near-far bin edges must be nonempty and ascending");
    const Books books = make_books(s);

    auto make_bins = [&] {
        std::vector<NearFarBin> bins(edges.size());
        for (std::size_t b = 0; b < edges.size(); ++b) {
            bins[b].lo_db = edges[b];
            bins[b].hi_db = b + 1 < edges.size() ? edges[b + 1] : std::numeric_limits<double>::infinity();
        }
        return bins;
    };

    std::vector<std::vector<NearFarBin>> per_realization(s.realizations, make_bins());
    parallel_for(s.realizations, s.workers, [&](std::size_t r) {
        auto& bins = per_realization[r];
        const auto trials = build_trials(s, books, r);
        for (std::size_t k = 0; k < trials.size(); ++k) {
            const QueryTrial& t = trials[k];
            const MeasurementVector y = observe(s, books, t, r, k, 0, snr_db);
            const std::vector<Nia> estimate = decode(s, books, t, y, snr_db, s.threshold);
            for (std::size_t j = 0; j < t.truth.size(); ++j) {
                const auto pos = std::upper_bound(edges.begin(), edges.end(), t.gain_db[j]);
                if (pos == edges.begin()) continue;  // below the first edge
                NearFarBin& bin = bins[static_cast<std::size_t>(pos - edges.begin()) - 1];
                ++bin.neighbors;
                if (!std::binary_search(estimate.begin(), estimate.end(), t.truth[j])) ++bin.misses;
            }
        }
    });

    std::vector<NearFarBin> out = make_bins();
    for (const auto& bins : per_realization) {
        for (std::size_t b = 0; b < out.size(); ++b) {
            out[b].neighbors += bins[b].neighbors;
            out[b].misses += bins[b].misses;
        }
    }
    return out;
}

GridSearchResult optimize_parameters(const Scenario& s, double reference_snr_db,
                                     const std::vector<double>& q_grid,
                                     const std::vector<double>& threshold_grid) {
    s.validate();
    if (s.scheme != Scheme::random_gt) throw ConfigError("parameter search requires scheme random-gt");
    return grid_search(q_grid, threshold_grid, [&](double q, const std::vector<double>& thresholds) {
        const Books books = make_books(s, q);
        std::vector<std::vector<ErrorCounter>> per_realization(s.realizations,
                                                               std::vector<ErrorCounter>(thresholds.size()));
        parallel_for(s.realizations, s.workers, [&](std::size_t r) {
            const auto trials = build_trials(s, books, r);
            for (std::size_t k = 0; k < trials.size(); ++k) {
                const MeasurementVector y = observe(s, books, trials[k], r, k, 0, reference_snr_db);
                for (std::size_t i = 0; i < thresholds.size(); ++i)
                    per_realization[r][i].add(trials[k].truth,
                                              decode(s, books, trials[k], y, reference_snr_db, thresholds[i]));
            }
        });
        std::vector<ErrorRates> rates;
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            ErrorCounter total;
            for (const auto& row : per_realization) total.merge(row[i]);
            rates.push_back(total.rates());
        }
        return rates;
    });
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + text + "' (expected csv or json)");
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv) {
        out << "snr_db,miss_rate,false_alarm_rate,trials\n";
        for (const ResultRow& row : rows) {
            const ErrorRates r = row.rates();
            out << format_number(row.snr_db) << ',' << format_number(r.miss_rate) << ','
                << format_number(r.false_alarm_rate) << ',' << r.trials << '\n';
        }
        return;
    }
    // Numbers go through the same 6-digit formatting so both forms agree.
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const ResultRow& row : rows) {
        const ErrorRates r = row.rates();
        nlohmann::ordered_json j;
        j["snr_db"] = std::stod(format_number(row.snr_db));
        j["miss_rate"] = std::stod(format_number(r.miss_rate));
        j["false_alarm_rate"] = std::stod(format_number(r.false_alarm_rate));
        j["trials"] = r.trials;
        doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    emit_results(rows, format, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<ParsedRow> parse_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "snr_db,miss_rate,false_alarm_rate,trials")
        throw ShapeError("missing or unexpected CSV header");
    std::vector<ParsedRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string a, b, c, d;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') ||
            !std::getline(fields, c, ',') || !std::getline(fields, d))
            throw ShapeError("malformed CSV row '" + line + "'");
        rows.push_back({std::stod(a), std::stod(b), std::stod(c), std::stoull(d)});
    }
    return rows;
}

}  // namespace cnd
