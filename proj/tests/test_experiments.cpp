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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cnd/experiments.hpp"
#include "cnd/io.hpp"

using namespace cnd;

namespace {

Scenario parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

Scenario small_gt() {
    Scenario s;
    s.population = 2000;
    s.mean_neighbors = 5.0;
    s.length = 256;
    s.on_fraction = 0.08;
    s.threshold = 2.0;
    s.tolerance = 1;
    s.snr_db = {10.0, 20.0};
    s.realizations = 3;
    s.query_nodes = 10;
    return s;
}

}  // namespace

TEST(Scenario, ParseKeysAliasesAndComments) {
    const Scenario s = parse("# header\nscheme = rm\nc = 30   # trailing\nm=8\nn1 = 8\nn2 = 8\nsnr_db = 5, 10,15\n"
                             "T_max = 40\nseed = 0x10\nphase_randomization = off\nshift = cyclic\n");
    EXPECT_EQ(s.scheme, Scheme::rm_chirp);
    EXPECT_EQ(s.mean_neighbors, 30.0);
    EXPECT_EQ(s.m, 8U);
    EXPECT_EQ(s.snr_db, (std::vector<double>{5, 10, 15}));
    EXPECT_EQ(s.max_iterations, 40U);
    EXPECT_EQ(s.master_seed, 16U);
    EXPECT_FALSE(s.phase_randomization);
    EXPECT_EQ(s.shift, ShiftMode::cyclic);
    EXPECT_EQ(parse("c = 3\nc = 4\n").mean_neighbors, 4.0);
}

TEST(Scenario, Errors) {
    EXPECT_THROW(parse("bogus = 1\n"), ConfigError);
    EXPECT_THROW(parse("c = ten\n"), ConfigError);
    EXPECT_THROW(parse("no equals sign\n"), ConfigError);
    EXPECT_THROW(parse("scheme = fancy\n"), ConfigError);
    EXPECT_THROW(parse("phase_randomization = maybe\n"), ConfigError);
    EXPECT_THROW(load_scenario("/nonexistent/dir/x.cfg"), IoError);
    Scenario s;
    s.on_fraction = 1.5;
    EXPECT_THROW(s.validate(), ConfigError);
    s = Scenario{};
    s.realizations = 0;
    EXPECT_THROW(s.validate(), ConfigError);
    try {
        parse("q = -1\n").validate();
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("on_fraction"), std::string::npos);
    }
}

TEST(Scenario, FormatParseRoundTrip) {
    for (Scheme scheme : {Scheme::random_gt, Scheme::rm_chirp}) {
        Scenario s;
        s.scheme = scheme;
        s.mean_neighbors = 12.5;
        s.snr_db = {0.5, 7.25};
        s.master_seed = 99;
        const std::string once = format_scenario(s);
        const std::string twice = format_scenario(parse(once));
        EXPECT_EQ(once, twice);
    }
}

TEST(Scenario, DbConversion) {
    EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
    EXPECT_NEAR(db_to_linear(26.0), 398.107, 1e-3);
}

TEST(Results, CsvAndJsonAgree) {
    std::vector<ResultRow> rows(2);
    rows[0].snr_db = 10;
    rows[0].counts.add({1, 2, 3}, {1, 2, 7});
    rows[1].snr_db = 20.5;
    rows[1].counts.add({1, 2, 3}, {1, 2, 3});
    std::ostringstream csv;
    emit_results(rows, OutputFormat::csv, csv);
    EXPECT_EQ(csv.str(), "snr_db,miss_rate,false_alarm_rate,trials\n10,0.333333,0.333333,1\n20.5,0,0,1\n");
    std::istringstream in(csv.str());
    const auto back = parse_results_csv(in);
    ASSERT_EQ(back.size(), 2U);
    EXPECT_EQ(back[0].miss_rate, 0.333333);
    EXPECT_EQ(back[1].snr_db, 20.5);
    EXPECT_EQ(back[1].trials, 1U);

    std::ostringstream js;
    emit_results(rows, OutputFormat::json, js);
    const auto doc = nlohmann::json::parse(js.str());
    ASSERT_EQ(doc.size(), 2U);
    EXPECT_EQ(doc[0]["miss_rate"].get<double>(), 0.333333);
    EXPECT_EQ(doc[1]["trials"].get<int>(), 1);

    EXPECT_EQ(parse_format("json"), OutputFormat::json);
    EXPECT_THROW(parse_format("xml"), ConfigError);
    std::istringstream bad("a,b\n");
    EXPECT_THROW(parse_results_csv(bad), ShapeError);
    EXPECT_THROW(emit_results(rows, OutputFormat::csv, std::string("/nonexistent/dir/out.csv")), IoError);
}

TEST(Results, NumberFormat) {
    EXPECT_EQ(format_number(0.00123456789), "0.00123457");
    EXPECT_EQ(format_number(26), "26");
}

TEST(RunScenario, DeterministicAndWorkerIndependent) {
    Scenario s = small_gt();
    const auto one = run_scenario(s);
    s.workers = 3;
    const auto three = run_scenario(s);
    ASSERT_EQ(one.size(), 2U);
    for (std::size_t k = 0; k < one.size(); ++k) {
        EXPECT_EQ(one[k].snr_db, s.snr_db[k]);
        EXPECT_EQ(one[k].counts.misses, three[k].counts.misses);
        EXPECT_EQ(one[k].counts.false_alarms, three[k].counts.false_alarms);
        EXPECT_EQ(one[k].counts.true_neighbors, three[k].counts.true_neighbors);
        EXPECT_EQ(one[k].counts.trials, 30U);
    }
    // Same realizations at every SNR point.
    EXPECT_EQ(one[0].counts.true_neighbors, one[1].counts.true_neighbors);
    s.workers = 1;
    const auto again = run_scenario(s);
    EXPECT_EQ(again[1].counts.misses, one[1].counts.misses);
    s.master_seed = 2;
    EXPECT_NE(run_scenario(s)[0].counts.true_neighbors, one[0].counts.true_neighbors);
}

TEST(RunScenario, RmChirpSmall) {
    Scenario s;
    s.scheme = Scheme::rm_chirp;
    s.mean_neighbors = 3.0;
    s.m = s.n1 = s.n2 = 8;
    s.snr_db = {30.0};
    s.realizations = 2;
    s.query_nodes = 10;
    const auto rows = run_scenario(s);
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_EQ(rows[0].counts.trials, 20U);
    EXPECT_LT(rows[0].rates().total(), 0.2);
}

TEST(NearFar, BinsCoverAllNeighbors) {
    Scenario s;
    s.scheme = Scheme::rm_chirp;
    s.mean_neighbors = 3.0;
    s.m = s.n1 = s.n2 = 8;
    s.realizations = 2;
    s.query_nodes = 10;
    const auto bins = sweep_near_far(s, 20.0, {-20.0, -10.0, 0.0, 10.0});
    ASSERT_EQ(bins.size(), 4U);
    EXPECT_TRUE(std::isinf(bins.back().hi_db));
    s.snr_db = {20.0};
    const auto rows = run_scenario(s);
    std::uint64_t total = 0, misses = 0;
    for (const auto& b : bins) {
        total += b.neighbors;
        misses += b.misses;
        if (b.neighbors == 0) {
            EXPECT_FALSE(b.miss_rate().has_value());
        }
    }
    EXPECT_EQ(total, rows[0].counts.true_neighbors);
    EXPECT_EQ(misses, rows[0].counts.misses);
}

TEST(OptimizeParameters, ReturnsGridPoint) {
    Scenario s = small_gt();
    s.realizations = 1;
    const auto r = optimize_parameters(s, 20.0, {0.05, 0.08}, {1.0, 2.0});
    EXPECT_EQ(r.table.size(), 4U);
    EXPECT_TRUE(r.q == 0.05 || r.q == 0.08);
    EXPECT_TRUE(r.threshold == 1.0 || r.threshold == 2.0);
}

TEST(Io, RealizationAndMeasurementRoundTrip) {
    NetworkConfig cfg;
    cfg.intensity = 0.5;
    cfg.region_half_width = 6.0;
    cfg.population = 1000;
    cfg.addresses = AddressLayout::scattered;
    const NetworkRealization real = sample_network(cfg, 8);
    const NetworkRealization back = realization_from_json(json::parse(to_json(real).dump()));
    ASSERT_EQ(back.nodes().size(), real.nodes().size());
    for (std::size_t k = 0; k < real.nodes().size(); ++k) {
        EXPECT_EQ(back.nodes()[k].nia, real.nodes()[k].nia);
        EXPECT_EQ(back.nodes()[k].x, real.nodes()[k].x);
        EXPECT_EQ(back.nodes()[k].fading, real.nodes()[k].fading);
    }
    EXPECT_EQ(back.seed(), 8U);
    EXPECT_EQ(back.config().addresses, AddressLayout::scattered);

    MeasurementVector y;
    y.samples = {{1.0, -2.0}, {0.125, 3e-7}};
    y.erasure_mask = {0, 1};
    const MeasurementVector yb = measurement_from_json(json::parse(to_json(y).dump()));
    EXPECT_EQ(yb.samples, y.samples);
    EXPECT_EQ(yb.erasure_mask, y.erasure_mask);
    EXPECT_THROW(measurement_from_json(json::parse(R"({"samples": [[1, 2, 3]]})")), ShapeError);
    EXPECT_THROW(measurement_from_json(json::parse(R"({"samples": [[1, 2]], "erasure_mask": [0, 1]})")),
                 ShapeError);
    EXPECT_THROW(realization_from_json(json::parse(R"({"nodes": []})")), ShapeError);
}

TEST(Io, FilesAndBits) {
    EXPECT_THROW(read_json_file("/nonexistent/file.json"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "cnd_bad.json";
    write_text_file(path.string(), "{not json");
    EXPECT_THROW(read_json_file(path.string()), ShapeError);
    std::filesystem::remove(path);
    EXPECT_EQ(bits_string(0b11000, 5), "11000");
    EXPECT_EQ(bits_string(2, 5), "00010");
}
