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

#include "cnd/io.hpp"

#include <fstream>
#include <sstream>

namespace cnd {

namespace {

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ShapeError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ShapeError(std::string("malformed ") + what + ": " + e.what());
    }
}

}  // namespace

std::string bits_string(std::uint64_t value, unsigned width) {
    std::string s(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
    return s;
}

json to_json(const NetworkRealization& real) {
    const NetworkConfig& c = real.config();
    json j;
    j["seed"] = real.seed();
    j["config"] = {{"intensity", c.intensity},
                   {"path_loss_exponent", c.path_loss_exponent},
                   {"neighbor_threshold", c.neighbor_threshold},
                   {"region_half_width", c.region_half_width},
                   {"population", c.population},
                   {"addresses", c.addresses == AddressLayout::scattered ? "scattered" : "sequential"}};
    json nodes = json::array();
    for (const NodePoint& p : real.nodes())
        nodes.push_back({{"nia", p.nia}, {"x", p.x}, {"y", p.y}, {"fading", p.fading}});
    j["nodes"] = std::move(nodes);
    return j;
}

NetworkRealization realization_from_json(const json& j) {
    return guarded("realization", [&] {
        const json& c = j.at("config");
        NetworkConfig cfg;
        cfg.intensity = c.at("intensity").get<double>();
        cfg.path_loss_exponent = c.at("path_loss_exponent").get<double>();
        cfg.neighbor_threshold = c.at("neighbor_threshold").get<double>();
        cfg.region_half_width = c.at("region_half_width").get<double>();
        cfg.population = c.at("population").get<std::uint64_t>();
        cfg.addresses = c.value("addresses", std::string("sequential")) == "scattered"
                            ? AddressLayout::scattered
                            : AddressLayout::sequential;
        std::vector<NodePoint> nodes;
        for (const json& n : j.at("nodes")) {
            NodePoint p;
            p.nia = n.at("nia").get<Nia>();
            p.x = n.at("x").get<double>();
            p.y = n.at("y").get<double>();
            p.fading = n.at("fading").get<double>();
            nodes.push_back(p);
        }
        return NetworkRealization(cfg, j.at("seed").get<std::uint64_t>(), std::move(nodes));
    });
}

json to_json(const MeasurementVector& y) {
    json samples = json::array();
    for (cplx z : y.samples) samples.push_back(complex_pair(z));
    json j;
    j["samples"] = std::move(samples);
    j["erasure_mask"] = y.erasure_mask;
    return j;
}

MeasurementVector measurement_from_json(const json& j) {
    return guarded("measurement", [&] {
        MeasurementVector y;
        for (const json& z : j.at("samples")) y.samples.push_back(complex_from(z));
        if (j.contains("erasure_mask")) y.erasure_mask = j.at("erasure_mask").get<std::vector<std::uint8_t>>();
        if (!y.erasure_mask.empty() && y.erasure_mask.size() != y.samples.size())
            throw ShapeError("erasure_mask length differs from samples");
        return y;
    });
}

json to_json(const OnOffSignature& s) {
    json j;
    j["nia"] = s.nia;
    j["length"] = s.length;
    j["on_slots"] = s.slots;
    json values = json::array();
    for (cplx z : s.values) values.push_back(complex_pair(z));
    j["values"] = std::move(values);
    return j;
}

json to_json(const SymMatrix& p) {
    json rows = json::array();
    for (std::uint32_t r : p.rows) rows.push_back(bits_string(r, p.m));
    return rows;
}

json to_json(const DiscoveryResult& r) {
    json j;
    j["neighbors"] = r.neighbors;
    json coefficients = json::array();
    for (cplx z : r.coefficients) coefficients.push_back(complex_pair(z));
    j["coefficients"] = std::move(coefficients);
    j["iterations_used"] = r.iterations_used;
    j["residual_energy"] = r.residual_energy;
    j["stop_reason"] = r.stop_reason;
    json candidates = json::array();
    for (std::size_t k = 0; k < r.candidates.size(); ++k)
        candidates.push_back({{"nia", r.candidates[k]}, {"coefficient", complex_pair(r.candidate_coefficients[k])}});
    j["candidates"] = std::move(candidates);
    return j;
}

json describe_rm_signature(Nia nia, const RmCodebook& book) {
    const RmCodebookParams& p = book.params();
    const RmCodeword w = book.codeword(nia);
    const ErasurePattern r = book.erasure(nia);
    json j;
    j["nia"] = nia;
    j["params"] = {{"m", p.m}, {"m0", p.m0}, {"n1", p.n1}, {"n2", p.n2}, {"erasures", p.erasures}};
    j["b"] = bits_string(w.b, p.m);
    j["c"] = bits_string(w.c, p.n2);
    j["P"] = to_json(w.p);
    json symbols = json::array();
    for (cplx z : w.symbols) symbols.push_back(complex_pair(z));
    j["codeword"] = std::move(symbols);
    j["erasure"] = r.bits;
    j["signature"] = to_json(book.signature(nia));
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ShapeError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace cnd
