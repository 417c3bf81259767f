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

// Stochastic-geometry channel: Poisson nodes in a square, Rayleigh fading
// marks, power-law path loss, and the superposed received signal
//
//     Y = sqrt(snr) * sum_n X_n S_n + W,   W ~ CN(0, I).

#ifndef CND_CHANNEL_HPP
#define CND_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cnd/types.hpp"

namespace cnd {

/// How NIAs are handed to the sampled nodes.
enum class AddressLayout {
    sequential,  // 0, 1, ..., count-1 in placement order
    scattered,   // seeded sample without replacement from [0, population)
};

struct NetworkConfig {
    double intensity = 1.0;            // lambda, nodes per unit area
    double path_loss_exponent = 3.0;   // alpha
    double neighbor_threshold = 0.05;  // eta, linear power gain
    double region_half_width = 10.0;   // the square is [-w, w]^2
    std::uint64_t population = 10000;  // N, size of the NIA space
    AddressLayout addresses = AddressLayout::sequential;

    double area() const noexcept { return 4.0 * region_half_width * region_half_width; }
    double expected_nodes() const noexcept { return intensity * area(); }

    /// Throws ConfigError. Zero intensity is accepted (empty network).
    void validate() const;
};

struct NodePoint {
    Nia nia = 0;
    double x = 0.0;
    double y = 0.0;
    double fading = 0.0;  // G towards the origin, unit-mean exponential

    double distance_to_origin() const noexcept;
};

struct LinkCoefficient {
    double magnitude = 0.0;  // |U|
    double phase = 0.0;      // [0, 2 pi)

    cplx value() const noexcept { return std::polar(magnitude, phase); }
};

/// Immutable network snapshot. Pairwise fading is a keyed function of the
/// two NIAs, so gain(a, b) == gain(b, a) without storing N^2 values.
class NetworkRealization {
public:
    NetworkRealization() = default;
    NetworkRealization(NetworkConfig config, std::uint64_t seed, std::vector<NodePoint> nodes);

    const NetworkConfig& config() const noexcept { return config_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<NodePoint>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    double distance(std::size_t a, std::size_t b) const noexcept;
    /// Small-scale fading of the (a, b) link, symmetric in its arguments.
    double pair_fading(std::size_t a, std::size_t b) const noexcept;
    /// G * R^-alpha.
    double power_gain(std::size_t a, std::size_t b) const noexcept;
    /// Complex coefficient of the link from `from` to `to`. Magnitude is
    /// reciprocal; the phase is drawn per direction.
    LinkCoefficient link(std::size_t from, std::size_t to) const noexcept;

    /// Indices of the `count` nodes closest to the origin, nearest first.
    std::vector<std::size_t> nearest_to_origin(std::size_t count) const;

private:
    NetworkConfig config_;
    std::uint64_t seed_ = 0;
    std::vector<NodePoint> nodes_;
};

/// Poisson-many nodes placed uniformly on the square, NIAs per
/// `cfg.addresses`. Deterministic in seed.
/// Throws ConfigError if the square is expected to hold more nodes than
/// there are addresses, or if a draw happens to exceed the population.
NetworkRealization sample_network(const NetworkConfig& cfg, std::uint64_t seed);

/// Neighbor test as a pure predicate; the boundary G R^-alpha == eta counts.
bool is_neighbor(double fading, double distance, double alpha, double eta) noexcept;

/// Node indices n != query with G(query, n) R^-alpha >= eta, ascending.
std::vector<std::size_t> neighbor_set(const NetworkRealization& real, std::size_t query);

/// Neighbors of a silent observer placed at the origin, using the per-node
/// fading marks.
std::vector<std::size_t> origin_neighbor_set(const NetworkRealization& real);

/// Neighbor amplitude law: P(|U| > u) = eta^(2/alpha) / u^(4/alpha), u >= sqrt(eta).
double neighbor_gain_pdf(double u, double alpha, double eta) noexcept;
double neighbor_gain_tail(double u, double alpha, double eta) noexcept;

/// Inverse-CDF draw of |U| with a uniform phase.
LinkCoefficient sample_neighbor_gain(double alpha, double eta, std::uint64_t seed);

/// Campbell mean: c = (2/alpha) pi lambda eta^(-2/alpha) Gamma(2/alpha).
double expected_neighbor_count(double intensity, double alpha, double eta);
/// Inverse of expected_neighbor_count in lambda.
double intensity_for_neighbors(double mean_neighbors, double alpha, double eta);

/// Y = sqrt(snr) * sum_{n in support} X_n S_n + W.
///
/// `signatures` must contain one entry per support NIA (any order, extra
/// entries ignored). Without a noise seed the output is noiseless.
/// Throws CodebookError on a missing signature or a length mismatch.
MeasurementVector synthesize_received(std::span<const OnOffSignature> signatures,
                                      const SupportVector& x, double snr, std::size_t length,
                                      std::optional<std::uint64_t> noise_seed);

/// Zero the samples where `own` is on and record them in the erasure mask.
/// Existing erasures are kept; applying the same signature twice is a no-op.
MeasurementVector apply_self_erasure(const MeasurementVector& y, const OnOffSignature& own);

}  // namespace cnd

#endif  // CND_CHANNEL_HPP
