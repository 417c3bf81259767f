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

#include "cnd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_set>

#include "cnd/rng.hpp"

namespace cnd {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<Nia> sample_addresses(std::uint64_t seed, std::size_t count, std::uint64_t population) {
    std::vector<Nia> out;
    out.reserve(count);
    KeyedStream rng(seed, StreamTag::nia_assignment);
    if (2 * count >= population) {
        // Dense case: partial Fisher-Yates over the whole address space.
        std::vector<Nia> all(population);
        std::iota(all.begin(), all.end(), Nia{0});
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t j = i + rng.below(population - i);
            std::swap(all[i], all[j]);
            out.push_back(all[i]);
        }
        return out;
    }
    std::unordered_set<Nia> used;
    used.reserve(2 * count);
    while (out.size() < count) {
        const Nia candidate = rng.below(population);
        if (used.insert(candidate).second) out.push_back(candidate);
    }
    return out;
}

}  // namespace

void NetworkConfig::validate() const {
    if (!(intensity >= 0.0) || !std::isfinite(intensity))
        throw ConfigError("intensity must be a finite value >= 0");
    if (!(path_loss_exponent > 0.0)) throw ConfigError("path_loss_exponent must be > 0");
    if (!(neighbor_threshold > 0.0)) throw ConfigError("neighbor_threshold must be > 0");
    if (!(region_half_width > 0.0)) throw ConfigError("region_half_width must be > 0");
    if (population < 1) throw ConfigError("population must be >= 1");
    if (expected_nodes() > static_cast<double>(population))
        throw ConfigError("region too large: expected " + std::to_string(expected_nodes()) +
                          " nodes for only " + std::to_string(population) + " addresses");
}

double NodePoint::distance_to_origin() const noexcept { return std::hypot(x, y); }

NetworkRealization::NetworkRealization(NetworkConfig config, std::uint64_t seed,
                                       std::vector<NodePoint> nodes)
    : config_(config), seed_(seed), nodes_(std::move(nodes)) {}

double NetworkRealization::distance(std::size_t a, std::size_t b) const noexcept {
    return std::hypot(nodes_[a].x - nodes_[b].x, nodes_[a].y - nodes_[b].y);
}

double NetworkRealization::pair_fading(std::size_t a, std::size_t b) const noexcept {
    const Nia lo = std::min(nodes_[a].nia, nodes_[b].nia);
    const Nia hi = std::max(nodes_[a].nia, nodes_[b].nia);
    return -std::log(1.0 - keyed_uniform(seed_, StreamTag::pair_fading, lo, hi));
}

double NetworkRealization::power_gain(std::size_t a, std::size_t b) const noexcept {
    const double r = distance(a, b);
    return pair_fading(a, b) * std::pow(r, -config_.path_loss_exponent);
}

LinkCoefficient NetworkRealization::link(std::size_t from, std::size_t to) const noexcept {
    LinkCoefficient u;
    u.magnitude = std::sqrt(power_gain(from, to));
    u.phase = two_pi * keyed_uniform(seed_, StreamTag::link_phase, nodes_[from].nia, nodes_[to].nia);
    return u;
}

std::vector<std::size_t> NetworkRealization::nearest_to_origin(std::size_t count) const {
    std::vector<std::size_t> order(nodes_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    count = std::min(count, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [this](std::size_t a, std::size_t b) {
                          const double da = nodes_[a].distance_to_origin();
                          const double db = nodes_[b].distance_to_origin();
                          return da != db ? da < db : a < b;
                      });
    order.resize(count);
    return order;
}

NetworkRealization sample_network(const NetworkConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    KeyedStream points(seed, StreamTag::network_points);
    const std::uint64_t count = points.poisson(cfg.expected_nodes());
    if (count > cfg.population)
        throw ConfigError("realized node count " + std::to_string(count) +
                          " exceeds the address population " + std::to_string(cfg.population));

    std::vector<Nia> addresses;
    if (cfg.addresses == AddressLayout::scattered) {
        addresses = sample_addresses(seed, count, cfg.population);
    } else {
        addresses.resize(count);
        std::iota(addresses.begin(), addresses.end(), Nia{0});
    }
    KeyedStream fading(seed, StreamTag::node_fading);
    const double w = cfg.region_half_width;
    std::vector<NodePoint> nodes(count);
    for (std::size_t i = 0; i < count; ++i) {
        nodes[i].nia = addresses[i];
        nodes[i].x = (2.0 * points.uniform() - 1.0) * w;
        nodes[i].y = (2.0 * points.uniform() - 1.0) * w;
        nodes[i].fading = fading.exponential();
    }
    return NetworkRealization(cfg, seed, std::move(nodes));
}

bool is_neighbor(double fading, double distance, double alpha, double eta) noexcept {
    if (distance <= 0.0) return fading > 0.0;
    return fading * std::pow(distance, -alpha) >= eta;
}

std::vector<std::size_t> neighbor_set(const NetworkRealization& real, std::size_t query) {
    const double alpha = real.config().path_loss_exponent;
    const double eta = real.config().neighbor_threshold;
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < real.size(); ++n) {
        if (n == query) continue;
        if (is_neighbor(real.pair_fading(query, n), real.distance(query, n), alpha, eta))
            out.push_back(n);
    }
    return out;
}

std::vector<std::size_t> origin_neighbor_set(const NetworkRealization& real) {
    const double alpha = real.config().path_loss_exponent;
    const double eta = real.config().neighbor_threshold;
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < real.size(); ++n) {
        const NodePoint& p = real.nodes()[n];
        if (is_neighbor(p.fading, p.distance_to_origin(), alpha, eta)) out.push_back(n);
    }
    return out;
}

double neighbor_gain_pdf(double u, double alpha, double eta) noexcept {
    if (u < std::sqrt(eta)) return 0.0;
    return (4.0 / alpha) * std::pow(eta, 2.0 / alpha) * std::pow(u, -4.0 / alpha - 1.0);
}

double neighbor_gain_tail(double u, double alpha, double eta) noexcept {
    if (u <= std::sqrt(eta)) return 1.0;
    return std::pow(eta, 2.0 / alpha) / std::pow(u, 4.0 / alpha);
}

LinkCoefficient sample_neighbor_gain(double alpha, double eta, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(eta > 0.0)) throw ConfigError("alpha and eta must be > 0");
    KeyedStream rng(seed, StreamTag::neighbor_gain);
    LinkCoefficient u;
    // Tail inversion: |U| = sqrt(eta) * V^(-alpha/4), V uniform on (0, 1].
    u.magnitude = std::sqrt(eta) * std::pow(rng.uniform_open(), -alpha / 4.0);
    u.phase = two_pi * rng.uniform();
    return u;
}

double expected_neighbor_count(double intensity, double alpha, double eta) {
    if (!(alpha > 0.0) || !(eta > 0.0) || intensity < 0.0)
        throw ConfigError("expected_neighbor_count: arguments must be positive");
    return (2.0 / alpha) * std::numbers::pi * intensity * std::pow(eta, -2.0 / alpha) *
           std::tgamma(2.0 / alpha);
}

double intensity_for_neighbors(double mean_neighbors, double alpha, double eta) {
    return mean_neighbors / expected_neighbor_count(1.0, alpha, eta);
}

MeasurementVector synthesize_received(std::span<const OnOffSignature> signatures,
                                      const SupportVector& x, double snr, std::size_t length,
                                      std::optional<std::uint64_t> noise_seed) {
    MeasurementVector y;
    y.samples.assign(length, cplx{});
    const double amplitude = std::sqrt(snr);
    for (const auto& [nia, coefficient] : x.entries) {
        const auto it = std::find_if(signatures.begin(), signatures.end(),
                                     [nia = nia](const OnOffSignature& s) { return s.nia == nia; });
        if (it == signatures.end())
            throw CodebookError("no signature supplied for NIA " + std::to_string(nia));
        if (it->length != length)
            throw CodebookError("signature of NIA " + std::to_string(nia) + " has length " +
                                std::to_string(it->length) + ", expected " + std::to_string(length));
        const cplx scaled = amplitude * coefficient;
        for (std::size_t k = 0; k < it->slots.size(); ++k) y.samples[it->slots[k]] += scaled * it->values[k];
    }
    if (noise_seed) {
        KeyedStream noise(*noise_seed, StreamTag::noise);
        for (cplx& s : y.samples) s += noise.complex_normal();
    }
    return y;
}

MeasurementVector apply_self_erasure(const MeasurementVector& y, const OnOffSignature& own) {
    if (own.length != y.size())
        throw CodebookError("own signature length " + std::to_string(own.length) +
                            " does not match measurement length " + std::to_string(y.size()));
    MeasurementVector out = y;
    if (out.erasure_mask.empty()) out.erasure_mask.assign(out.size(), 0);
    for (std::uint32_t m : own.slots) {
        out.samples[m] = cplx{};
        out.erasure_mask[m] = 1;
    }
    return out;
}

}  // namespace cnd
