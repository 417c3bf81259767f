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

// Second-order Reed-Muller (Kerdock) on-off codebook.
//
// Codeword of (b, P), length 2^m, indexed by a in Z_2^m:
//
//     phi(a) = j^( a'Pa + 2 b'a )       (a'Pa over the integers, mod 4)
//
// Bit vectors of length m are stored as integers, MSB-first: component 1 is
// bit m-1. A row of P read as an integer is therefore also the Walsh index
// at which the decoder finds it.

#ifndef CND_RM_CODE_HPP
#define CND_RM_CODE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cnd/gf2.hpp"
#include "cnd/types.hpp"

namespace cnd {

inline constexpr unsigned max_rm_order = 16;

/// Binary symmetric m x m matrix, one integer per row (MSB-first columns).
struct SymMatrix {
    unsigned m = 0;
    std::vector<std::uint32_t> rows;

    SymMatrix() = default;
    explicit SymMatrix(unsigned order) : m(order), rows(order, 0) {}

    bool get(unsigned r, unsigned c) const noexcept { return (rows[r] >> (m - 1 - c)) & 1U; }
    void set(unsigned r, unsigned c, bool v) noexcept;
    bool symmetric() const noexcept;
    SymMatrix& operator^=(const SymMatrix& other) noexcept;
    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;
};

/// Exponent of j in a'Pa, i.e. (a'Pa mod 4) with the form taken over Z.
unsigned quadratic_form_mod4(const SymMatrix& p, std::uint32_t a) noexcept;

/// Nonzero taps of a primitive polynomial of the given degree, as the
/// exponents j < degree with coefficient 1 (x^degree + sum x^j).
const std::vector<unsigned>& primitive_taps(unsigned degree);

/// Ordered basis B(1..m(m+1)/2): level m first, then level m-1 padded into the
/// lower-right corner, and so on down to level 1. Each level-l element is the
/// l x l Hankel matrix of the maximal-length sequence seeded with a unit vector.
class KerdockBasis {
public:
    explicit KerdockBasis(unsigned m);

    unsigned order() const noexcept { return m_; }
    std::size_t size() const noexcept { return bases_.size(); }
    const SymMatrix& operator[](std::size_t i) const { return bases_.at(i); }
    const std::vector<SymMatrix>& bases() const noexcept { return bases_; }

    /// P(c) = sum_i c_i B(i) mod 2, with c_1 the MSB of the `bits`-wide field.
    SymMatrix combine(std::uint64_t c, unsigned bits) const;

private:
    unsigned m_;
    std::vector<SymMatrix> bases_;
};

KerdockBasis kerdock_basis(unsigned m);

struct RmCodebookParams {
    unsigned m = 5;
    unsigned m0 = 1;
    unsigned n1 = 5;
    unsigned n2 = 5;
    bool erasures = true;  // false: full-length codewords, no off-slots

    unsigned address_bits() const noexcept { return n1 + n2; }
    std::uint64_t population() const noexcept { return std::uint64_t{1} << address_bits(); }
    std::size_t length() const noexcept { return std::size_t{1} << m; }

    /// Range checks only; injectivity is checked by RmCodebook.
    void validate() const;
};

struct BcPair {
    std::uint32_t b = 0;  // m bits, MSB-first
    std::uint64_t c = 0;  // n2 bits, c_1 is the MSB
    friend bool operator==(const BcPair&, const BcPair&) = default;
};

/// Top n1 bits of the NIA become b' and are left-aligned in b; the low n2 bits
/// are c. Throws AddressError if nia >= 2^(n1+n2).
BcPair nia_to_bc(Nia nia, const RmCodebookParams& params);
/// Inverse. Throws AddressError if b has bits outside its top n1 positions or
/// c does not fit in n2 bits.
Nia bc_to_nia(const BcPair& bc, const RmCodebookParams& params);

struct RmCodeword {
    std::uint32_t b = 0;
    std::uint64_t c = 0;
    SymMatrix p;
    std::vector<cplx> symbols;  // entries in {1, j, -1, -j}
};

RmCodeword rm_codeword(std::uint32_t b, std::uint64_t c, unsigned c_bits, const KerdockBasis& basis);

/// Codeword symbols for an explicit P.
std::vector<cplx> rm_symbols(std::uint32_t b, const SymMatrix& p);

/// Erasure pattern r: the first 2^(m-m0) bits are
/// fair coin flips keyed by nia, and the rest repeat them. 1 keeps (on).
struct ErasurePattern {
    std::vector<std::uint8_t> bits;
    std::size_t period = 0;

    std::size_t on_count() const noexcept;
};

ErasurePattern erasure_pattern(Nia nia, unsigned m, unsigned m0, std::uint64_t key = 0);

/// Pattern from an explicit first segment, repeated to length 2^m.
ErasurePattern erasure_from_segment(const std::vector<std::uint8_t>& segment, unsigned m);

/// Deterministic RM on-off codebook. Holds the basis and the GF(2) structure
/// used to complete P from its first rows. Immutable after construction apart
/// from erasure overrides, which must be installed before sharing.
class RmCodebook {
public:
    /// Throws ConfigError if the parameters are out of range or if c is not
    /// determined by the first decode_rows() rows of P(c).
    explicit RmCodebook(const RmCodebookParams& params, std::uint64_t erasure_key = 0);

    const RmCodebookParams& params() const noexcept { return params_; }
    const KerdockBasis& basis() const noexcept { return *basis_; }
    std::size_t length() const noexcept { return params_.length(); }
    std::uint64_t population() const noexcept { return params_.population(); }

    /// Rows of P the decoder reads: m0 with erasures, otherwise the fewest
    /// leading rows that pin down c.
    unsigned decode_rows() const noexcept { return decode_rows_; }

    /// Replace the keyed erasure pattern of one NIA.
    void set_erasure_override(Nia nia, ErasurePattern pattern);

    RmCodeword codeword(Nia nia) const;
    ErasurePattern erasure(Nia nia) const;
    /// codeword .* erasure. All-on when erasures are disabled.
    OnOffSignature signature(Nia nia) const;

    /// Solve for c from the first decode_rows() rows; nullopt if the rows are
    /// not consistent with any codeword of this book.
    std::optional<std::uint64_t> complete(const std::vector<std::uint32_t>& first_rows) const;

private:
    RmCodebookParams params_;
    std::uint64_t erasure_key_;
    std::shared_ptr<const KerdockBasis> basis_;
    unsigned decode_rows_ = 0;
    std::shared_ptr<const gf2::LinearSpan> row_span_;
    std::map<Nia, ErasurePattern> overrides_;
};

/// Free-function form: P and c from the first rows, nullopt if inconsistent.
std::optional<std::pair<SymMatrix, std::uint64_t>> complete_symmetric_matrix(
    const std::vector<std::uint32_t>& first_rows, const RmCodebook& book);

OnOffSignature rm_onoff_signature(Nia nia, const RmCodebook& book);

}  // namespace cnd

#endif  // CND_RM_CODE_HPP
