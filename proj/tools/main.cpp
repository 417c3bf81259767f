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

// cnd: command line front end.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 1 anything else.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cnd/chirp_decoder.hpp"
#include "cnd/experiments.hpp"
#include "cnd/group_testing.hpp"
#include "cnd/io.hpp"
#include "cnd/metrics.hpp"
#include "cnd/random_signatures.hpp"
#include "cnd/rm_code.hpp"
#include "cnd/scenario.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_io = 3;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    unsigned workers = 0;
    std::vector<std::string> settings;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "key = value scenario file");
    cmd->add_option("--seed", c.seed, "master seed (overrides the config)");
    cmd->add_option("--out", c.out, "output path (default: stdout)");
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", c.workers, "worker threads (overrides the config)");
    cmd->add_option("--set", c.settings, "extra key=value overrides, applied last");
}

cnd::Scenario resolve(const Common& c, cnd::Scenario base = {}) {
    cnd::Scenario s = c.config.empty() ? base : cnd::load_scenario(c.config, base);
    for (const std::string& kv : c.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw cnd::ConfigError("--set expects key=value, got '" + kv + "'");
        cnd::apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (c.seed) s.master_seed = *c.seed;
    if (c.workers > 0) s.workers = c.workers;
    return s;
}

void emit_text(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw cnd::IoError("write to stdout failed");
    } else {
        cnd::write_text_file(c.out, text);
    }
}

// The resolved configuration goes next to the results, or to stderr.
void log_config(const Common& c, const cnd::Scenario& s) {
    const std::string text = cnd::format_scenario(s);
    if (c.out.empty()) std::cerr << "# resolved configuration\n" << text;
    else cnd::write_text_file(c.out + ".config", text);
}

std::string optional_number(const std::optional<double>& x) { return x ? cnd::format_number(*x) : ""; }

int run(int argc, char** argv) {
    CLI::App app{"cnd - compressed neighbor discovery simulator"};
    app.require_subcommand(1);

    // gen-signatures
    Common gen;
    std::string gen_scheme = "random";
    cnd::Nia gen_nia = 0;
    bool gen_phases = false;
    std::uint64_t gen_phase_key = 0;
    auto* gen_cmd = app.add_subcommand("gen-signatures", "print one NIA's signature as JSON");
    add_common(gen_cmd, gen);
    gen_cmd->add_option("--scheme", gen_scheme, "random or rm")->check(CLI::IsMember({"random", "rm"}));
    gen_cmd->add_option("--nia", gen_nia, "network interface address")->required();
    gen_cmd->add_flag("--phases", gen_phases, "apply keyed phase randomization (random scheme)");
    gen_cmd->add_option("--phase-key", gen_phase_key, "phase key");

    // decode
    Common dec;
    std::string dec_scheme = "rm";
    std::string dec_input;
    std::optional<cnd::Nia> dec_observer;
    std::optional<double> dec_snr;
    auto* dec_cmd = app.add_subcommand("decode", "decode a serialized measurement vector");
    add_common(dec_cmd, dec);
    dec_cmd->add_option("--scheme", dec_scheme, "random or rm")->check(CLI::IsMember({"random", "rm"}));
    dec_cmd->add_option("--input", dec_input, "measurement JSON")->required();
    dec_cmd->add_option("--observer", dec_observer, "observer NIA; its on-slots are erased");
    dec_cmd->add_option("--snr-db", dec_snr, "SNR used for the default acceptance threshold");

    // simulate
    Common sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo scenario over its SNR list");
    add_common(sim_cmd, sim);

    // sweep-near-far
    Common nf;
    double nf_snr = 10.0;
    std::vector<double> nf_edges{-13, -12, -11, -10, -9, -8, -7, -6, -5, -4, -3, -2, -1, 0, 3, 6, 10};
    auto* nf_cmd = app.add_subcommand("sweep-near-far", "miss rate binned by neighbor link gain (dB)");
    add_common(nf_cmd, nf);
    nf_cmd->add_option("--snr-db", nf_snr, "SNR in dB");
    nf_cmd->add_option("--edges", nf_edges, "ascending bin edges in dB of |U|^2")->delimiter(',');

    // optimize-params
    Common opt;
    double opt_snr = 26.0;
    std::vector<double> opt_q = cnd::default_q_grid();
    std::vector<double> opt_t = cnd::default_threshold_grid();
    auto* opt_cmd = app.add_subcommand("optimize-params", "grid search for sparsity q and threshold T");
    add_common(opt_cmd, opt);
    opt_cmd->add_option("--snr-db", opt_snr, "reference SNR in dB");
    opt_cmd->add_option("--q-grid", opt_q, "sparsity grid")->delimiter(',');
    opt_cmd->add_option("--T-grid", opt_t, "threshold grid")->delimiter(',');

    // baseline-ra
    Common ra;
    std::vector<std::uint64_t> ra_population{10000, 10000, 1048576, 1048576};
    std::vector<double> ra_neighbors{10, 30, 10, 30};
    std::vector<unsigned> ra_bits{14, 14, 20, 20};
    double ra_target = 0.002;
    auto* ra_cmd = app.add_subcommand("baseline-ra", "frames and symbols needed by random access");
    add_common(ra_cmd, ra);
    ra_cmd->add_option("--population", ra_population, "N per row")->delimiter(',');
    ra_cmd->add_option("--neighbors", ra_neighbors, "c per row")->delimiter(',');
    ra_cmd->add_option("--bits", ra_bits, "bits per frame per row")->delimiter(',');
    ra_cmd->add_option("--target", ra_target, "target miss probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    if (gen_cmd->parsed()) {
        cnd::json doc;
        if (gen_scheme == "rm") {
            cnd::Scenario base;
            base.scheme = cnd::Scheme::rm_chirp;
            const cnd::Scenario s = resolve(gen, base);
            const cnd::RmCodebook book(s.rm_params());
            doc = cnd::describe_rm_signature(gen_nia, book);
        } else {
            const cnd::Scenario s = resolve(gen);
            const cnd::RandomCodebook book(s.population, s.length, s.on_fraction, s.codebook_key);
            cnd::OnOffSignature sig = book.signature(gen_nia);
            if (gen_phases) sig = cnd::randomize_phases(sig, gen_nia, gen_phase_key);
            doc = cnd::to_json(sig);
            doc["on_fraction"] = s.on_fraction;
        }
        emit_text(gen, doc.dump(2) + "\n");
        return 0;
    }

    if (dec_cmd->parsed()) {
        cnd::Scenario base;
        base.scheme = dec_scheme == "rm" ? cnd::Scheme::rm_chirp : cnd::Scheme::random_gt;
        const cnd::Scenario s = resolve(dec, base);
        cnd::MeasurementVector y = cnd::measurement_from_json(cnd::read_json_file(dec_input));
        cnd::json doc;
        if (dec_scheme == "rm") {
            const cnd::RmCodebook book(s.rm_params());
            if (dec_observer) y = cnd::apply_self_erasure(y, book.signature(*dec_observer));
            const double snr = cnd::db_to_linear(dec_snr.value_or(s.snr_db.empty() ? 0.0 : s.snr_db.front()));
            cnd::DiscoveryResult r = cnd::chirp_decode(y, book, s.chirp_params(snr));
            if (dec_observer) {
                for (std::size_t k = 0; k < r.neighbors.size(); ++k) {
                    if (r.neighbors[k] != *dec_observer) continue;
                    r.neighbors.erase(r.neighbors.begin() + static_cast<std::ptrdiff_t>(k));
                    r.coefficients.erase(r.coefficients.begin() + static_cast<std::ptrdiff_t>(k));
                    break;
                }
            }
            doc = cnd::to_json(r);
        } else {
            const cnd::RandomCodebook book(s.population, s.length, s.on_fraction, s.codebook_key);
            if (dec_observer) y = cnd::apply_self_erasure(y, book.signature(*dec_observer));
            const cnd::OnOffCodebook slots = book.materialize();
            std::vector<cnd::Nia> found = cnd::tolerance_group_test(y, slots, s.threshold, s.tolerance);
            if (dec_observer) std::erase(found, *dec_observer);
            doc["neighbors"] = found;
            doc["threshold"] = s.threshold;
            doc["tolerance"] = s.tolerance;
        }
        emit_text(dec, doc.dump(2) + "\n");
        return 0;
    }

    if (sim_cmd->parsed()) {
        const cnd::Scenario s = resolve(sim);
        s.validate();
        log_config(sim, s);
        const auto rows = cnd::run_scenario(s);
        std::ostringstream os;
        cnd::emit_results(rows, cnd::parse_format(sim.format), os);
        emit_text(sim, os.str());
        return 0;
    }

    if (nf_cmd->parsed()) {
        cnd::Scenario base;
        base.scheme = cnd::Scheme::rm_chirp;
        const cnd::Scenario s = resolve(nf, base);
        s.validate();
        log_config(nf, s);
        const auto bins = cnd::sweep_near_far(s, nf_snr, nf_edges);
        std::ostringstream os;
        if (nf.format == "csv") {
            os << "lo_db,hi_db,neighbors,misses,miss_rate\n";
            for (const auto& b : bins)
                os << cnd::format_number(b.lo_db) << ',' << cnd::format_number(b.hi_db) << ',' << b.neighbors
                   << ',' << b.misses << ',' << optional_number(b.miss_rate()) << '\n';
        } else {
            cnd::json doc = cnd::json::array();
            for (const auto& b : bins) {
                cnd::json j;
                j["lo_db"] = b.lo_db;
                j["hi_db"] = std::isinf(b.hi_db) ? cnd::json(nullptr) : cnd::json(b.hi_db);
                j["neighbors"] = b.neighbors;
                j["misses"] = b.misses;
                j["miss_rate"] = b.miss_rate() ? cnd::json(*b.miss_rate()) : cnd::json(nullptr);
                doc.push_back(std::move(j));
            }
            os << doc.dump(2) << '\n';
        }
        emit_text(nf, os.str());
        return 0;
    }

    if (opt_cmd->parsed()) {
        const cnd::Scenario s = resolve(opt);
        s.validate();
        log_config(opt, s);
        const auto result = cnd::optimize_parameters(s, opt_snr, opt_q, opt_t);
        std::ostringstream os;
        if (opt.format == "csv") {
            os << "# selected q=" << cnd::format_number(result.q)
               << " T=" << cnd::format_number(result.threshold) << '\n';
            os << "q,threshold,miss_rate,false_alarm_rate,total\n";
            for (const auto& p : result.table)
                os << cnd::format_number(p.q) << ',' << cnd::format_number(p.threshold) << ','
                   << cnd::format_number(p.rates.miss_rate) << ','
                   << cnd::format_number(p.rates.false_alarm_rate) << ','
                   << cnd::format_number(p.rates.total()) << '\n';
        } else {
            cnd::json doc;
            doc["q"] = result.q;
            doc["threshold"] = result.threshold;
            doc["table"] = cnd::json::array();
            for (const auto& p : result.table)
                doc["table"].push_back({{"q", p.q},
                                        {"threshold", p.threshold},
                                        {"miss_rate", p.rates.miss_rate},
                                        {"false_alarm_rate", p.rates.false_alarm_rate}});
            os << doc.dump(2) << '\n';
        }
        emit_text(opt, os.str());
        return 0;
    }

    if (ra_cmd->parsed()) {
        if (ra_population.size() != ra_neighbors.size() || ra_population.size() != ra_bits.size())
            throw cnd::ConfigError("--population, --neighbors and --bits need the same number of entries");
        std::ostringstream os;
        cnd::json doc = cnd::json::array();
        if (ra.format == "csv") os << "population,mean_neighbors,bits_per_frame,frames,theta,miss,symbols\n";
        for (std::size_t i = 0; i < ra_population.size(); ++i) {
            const auto plan =
                cnd::min_frames_random_access(ra_population[i], ra_neighbors[i], ra_target, ra_bits[i]);
            if (ra.format == "csv") {
                os << ra_population[i] << ',' << cnd::format_number(ra_neighbors[i]) << ',' << ra_bits[i] << ','
                   << plan.frames << ',' << cnd::format_number(plan.theta) << ','
                   << cnd::format_number(plan.miss) << ',' << plan.symbols << '\n';
            } else {
                doc.push_back({{"population", ra_population[i]},
                               {"mean_neighbors", ra_neighbors[i]},
                               {"bits_per_frame", ra_bits[i]},
                               {"frames", plan.frames},
                               {"theta", plan.theta},
                               {"miss", plan.miss},
                               {"symbols", plan.symbols}});
            }
        }
        if (ra.format == "json") os << doc.dump(2) << '\n';
        emit_text(ra, os.str());
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cnd::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const cnd::AddressError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const cnd::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const cnd::ShapeError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
