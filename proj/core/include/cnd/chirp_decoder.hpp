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

// Iterative chirp decoding of superposed RM on-off signatures.
//
// Per iteration: for each leading row i of the strongest remaining P,
// correlate the residual with its own shift by 2^(m-i) and locate the Walsh
// peak; complete P and c over GF(2); dechirp and locate b; re-fit all found
// signatures by least squares and subtract.

#ifndef CND_CHIRP_DECODER_HPP
#define CND_CHIRP_DECODER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnd/rm_code.hpp"
#include "cnd/types.hpp"

namespace cnd {

/// How the residual is shifted against itself. With dyadic shifts a -> a xor s
/// the product conj(phi(a)) phi(a xor s) is a single Walsh function for every
/// row; a cyclic shift by s = 2^(m-1) is the same map.
enum class ShiftMode { dyadic, cyclic };

struct ChirpParams {
    unsigned max_iterations = 30;   // T_max
    double accept_threshold = 0.5;  // eta_0, on the sqrt(snr)-scaled coefficient
    unsigned weak_limit = 5;        // n_0
    ShiftMode shift = ShiftMode::dyadic;
    // Walsh peaks of the first-row correlation tried per iteration. The one
    // whose completed signature captures the most residual energy is kept.
    // 1 takes the highest peak only.
    unsigned row_candidates = 16;

    void validate() const;  // throws ConfigError

    /// T_max = ceil(3 c), eta_0 = sqrt(snr * eta) / 2, n_0 = 5.
    static ChirpParams defaults(double mean_neighbors, double snr, double eta);
};

/// In-place unnormalized Walsh-Hadamard transform in natural order,
/// y_k = sum_a v_a (-1)^popcount(k & a). Throws ShapeError unless the length
/// is a power of two.
void fwht_inplace(std::span<cplx> v);
std::vector<cplx> fwht(std::vector<cplx> v);

/// Index of the largest magnitude, lowest index on ties.
std::size_t argmax_abs(std::span<const cplx> v, std::size_t stride = 1);

struct RowPeak {
    std::uint32_t row = 0;    // zero-based Walsh index == row of P, MSB-first
    double magnitude = 0.0;
};

/// Row i (1-based) of the dominant P in yr. nullopt if the shift correlation
/// is identically zero (exhausted residual).
std::optional<RowPeak> recover_matrix_row(std::span<const cplx> yr, unsigned i, unsigned m,
                                          ShiftMode shift = ShiftMode::dyadic);

/// The `count` largest peaks of the same correlation, strongest first.
std::vector<RowPeak> recover_matrix_row_peaks(std::span<const cplx> yr, unsigned i, unsigned m,
                                              ShiftMode shift, std::size_t count);

/// b of the dominant codeword with matrix p. Only b whose low m - n1 bits are
/// zero are considered; n1 = m searches every b.
std::uint32_t recover_b(std::span<const cplx> yr, const SymMatrix& p, unsigned n1);

struct LeastSquaresResult {
    std::vector<cplx> coefficients;
    std::vector<cplx> residual;
    bool rank_deficient = false;
};

/// argmin_X ||yr - S X|| by complete orthogonal decomposition (minimum-norm if
/// S is rank deficient). Rows with a nonzero `skip` flag are ignored; their
/// residual is carried through unchanged.
LeastSquaresResult least_squares_update(std::span<const cplx> yr,
                                        const std::vector<std::vector<cplx>>& columns,
                                        std::span<const std::uint8_t> skip = {});

struct ChirpIteration {
    std::vector<std::uint32_t> rows;
    std::vector<double> row_peaks;
    std::uint32_t b = 0;
    std::uint64_t c = 0;
    Nia nia = 0;
    std::vector<cplx> update;  // X of this iteration, one per candidate so far
    double residual_energy = 0.0;
    bool rank_deficient = false;
};

struct DiscoveryResult {
    std::vector<Nia> neighbors;      // ascending
    std::vector<cplx> coefficients;  // aligned with neighbors
    unsigned iterations_used = 0;
    double residual_energy = 0.0;
    std::vector<Nia> candidates;  // discovery order, accepted or not
    std::vector<cplx> candidate_coefficients;
    std::vector<ChirpIteration> trace;
    std::string stop_reason;
};

/// Full iterative decode. y.erasure_mask marks the observer's own on-slots;
/// those samples are ignored and every candidate column is erased there too.
DiscoveryResult chirp_decode(const MeasurementVector& y, const RmCodebook& book,
                             const ChirpParams& params);

}  // namespace cnd

#endif  // CND_CHIRP_DECODER_HPP
