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

#include "cnd/rm_code.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "cnd/rng.hpp"

namespace cnd {

void SymMatrix::set(unsigned r, unsigned c, bool v) noexcept {
    const std::uint32_t mask = std::uint32_t{1} << (m - 1 - c);
    rows[r] = v ? (rows[r] | mask) : (rows[r] & ~mask);
}

bool SymMatrix::symmetric() const noexcept {
    for (unsigned r = 0; r < m; ++r)
        for (unsigned c = r + 1; c < m; ++c)
            if (get(r, c) != get(c, r)) return false;
    return true;
}

SymMatrix& SymMatrix::operator^=(const SymMatrix& other) noexcept {
    for (unsigned r = 0; r < m; ++r) rows[r] ^= other.rows[r];
    return *this;
}

unsigned quadratic_form_mod4(const SymMatrix& p, std::uint32_t a) noexcept {
    // sum_r a_r (row_r . a) counts each off-diagonal pair twice and each
    // diagonal term once, which is exactly a'Pa over Z.
    unsigned total = 0;
    for (unsigned r = 0; r < p.m; ++r)
        if ((a >> (p.m - 1 - r)) & 1U) total += static_cast<unsigned>(std::popcount(p.rows[r] & a));
    return total & 3U;
}

const std::vector<unsigned>& primitive_taps(unsigned degree) {
    static const std::array<std::vector<unsigned>, max_rm_order + 1> table = {{
        {},
        {0},
        {0, 1},
        {0, 1},
        {0, 1},
        {0, 2},
        {0, 1},
        {0, 1},
        {0, 2, 3, 4},
        {0, 4},
        {0, 3},
        {0, 2},
        {0, 1, 4, 6},
        {0, 1, 3, 4},
        {0, 1, 6, 10},
        {0, 1},
        {0, 1, 3, 12},
    }};
    if (degree < 1 || degree > max_rm_order)
        throw ConfigError("no primitive polynomial tabulated for degree " + std::to_string(degree));
    return table[degree];
}

KerdockBasis::KerdockBasis(unsigned m) : m_(m) {
    if (m < 1 || m > max_rm_order)
        throw ConfigError("RM order m must lie in [1, " + std::to_string(max_rm_order) + "]");
    for (unsigned level = m; level >= 1; --level) {
        const auto& taps = primitive_taps(level);
        const unsigned offset = m - level;
        for (unsigned i = 0; i < level; ++i) {
            std::vector<std::uint8_t> s(2 * level - 1, 0);
            s[i] = 1;
            for (unsigned k = 0; k + level < s.size(); ++k) {
                std::uint8_t next = 0;
                for (unsigned j : taps) next ^= s[k + j];
                s[k + level] = next;
            }
            SymMatrix p(m);
            for (unsigned r = 0; r < level; ++r)
                for (unsigned c = 0; c < level; ++c) p.set(offset + r, offset + c, s[r + c]);
            bases_.push_back(std::move(p));
        }
    }
}

SymMatrix KerdockBasis::combine(std::uint64_t c, unsigned bits) const {
    if (bits > bases_.size()) throw ConfigError("c field wider than the Kerdock basis");
    SymMatrix p(m_);
    for (unsigned i = 0; i < bits; ++i)
        if ((c >> (bits - 1 - i)) & 1U) p ^= bases_[i];
    return p;
}

KerdockBasis kerdock_basis(unsigned m) { return KerdockBasis(m); }

void RmCodebookParams::validate() const {
    if (m < 1 || m > max_rm_order)
        throw ConfigError("RM order m must lie in [1, " + std::to_string(max_rm_order) + "]");
    if (n1 > m) throw ConfigError("n1 must not exceed m");
    if (n2 > m * (m + 1) / 2) throw ConfigError("n2 must not exceed m(m+1)/2");
    if (n1 + n2 > 62) throw ConfigError("NIA wider than 62 bits");
    if (erasures) {
        if (m0 < 1 || 2 * m0 > m) throw ConfigError("m0 must satisfy 1 <= m0 <= m/2");
        if (2 * n2 > m0 * (2 * m - m0 + 1))
            throw ConfigError("n2 too large: the first m0 rows cannot determine c");
    }
}

BcPair nia_to_bc(Nia nia, const RmCodebookParams& params) {
    if (nia >= params.population())
        throw AddressError("NIA " + std::to_string(nia) + " needs more than " +
                           std::to_string(params.address_bits()) + " bits");
    BcPair bc;
    const std::uint64_t b_prime = nia >> params.n2;
    bc.b = static_cast<std::uint32_t>(b_prime << (params.m - params.n1));
    bc.c = nia & ((std::uint64_t{1} << params.n2) - 1);
    return bc;
}

Nia bc_to_nia(const BcPair& bc, const RmCodebookParams& params) {
    const unsigned pad = params.m - params.n1;
    if ((bc.b & ((std::uint32_t{1} << pad) - 1)) != 0 || (bc.b >> params.m) != 0)
        throw AddressError("b has bits outside its NIA-carrying positions");
    if ((bc.c >> params.n2) != 0) throw AddressError("c does not fit in n2 bits");
    return (static_cast<Nia>(bc.b >> pad) << params.n2) | bc.c;
}

std::vector<cplx> rm_symbols(std::uint32_t b, const SymMatrix& p) {
    static const std::array<cplx, 4> powers = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    const std::size_t length = std::size_t{1} << p.m;
    std::vector<cplx> out(length);
    for (std::uint32_t a = 0; a < length; ++a) {
        const unsigned e = quadratic_form_mod4(p, a) + 2U * static_cast<unsigned>(std::popcount(b & a));
        out[a] = powers[e & 3U];
    }
    return out;
}

RmCodeword rm_codeword(std::uint32_t b, std::uint64_t c, unsigned c_bits, const KerdockBasis& basis) {
    RmCodeword w;
    w.b = b;
    w.c = c;
    w.p = basis.combine(c, c_bits);
    w.symbols = rm_symbols(b, w.p);
    return w;
}

std::size_t ErasurePattern::on_count() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

ErasurePattern erasure_from_segment(const std::vector<std::uint8_t>& segment, unsigned m) {
    const std::size_t length = std::size_t{1} << m;
    if (segment.empty() || length % segment.size() != 0)
        throw ShapeError("erasure segment length must divide 2^m");
    ErasurePattern r;
    r.period = segment.size();
    r.bits.resize(length);
    for (std::size_t k = 0; k < length; ++k) r.bits[k] = segment[k % r.period] ? 1 : 0;
    return r;
}

ErasurePattern erasure_pattern(Nia nia, unsigned m, unsigned m0, std::uint64_t key) {
    if (2 * m0 > m) throw ConfigError("m0 must not exceed m/2");
    std::vector<std::uint8_t> segment(std::size_t{1} << (m - m0));
    for (std::size_t k = 0; k < segment.size(); ++k)
        segment[k] = keyed_uniform(key, StreamTag::rm_erasure, nia, k) < 0.5 ? 1 : 0;
    return erasure_from_segment(segment, m);
}

namespace {

gf2::BitVec leading_rows(const SymMatrix& p, unsigned rows) {
    gf2::BitVec v(std::size_t{rows} * p.m);
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < p.m; ++c)
            if (p.get(r, c)) v.set(std::size_t{r} * p.m + c);
    return v;
}

std::shared_ptr<const gf2::LinearSpan> build_span(const KerdockBasis& basis, unsigned n2, unsigned rows) {
    auto span = std::make_shared<gf2::LinearSpan>(std::size_t{rows} * basis.order());
    for (unsigned i = 0; i < n2; ++i) span->insert(leading_rows(basis[i], rows));
    return span;
}

}  // namespace

RmCodebook::RmCodebook(const RmCodebookParams& params, std::uint64_t erasure_key)
    : params_(params), erasure_key_(erasure_key) {
    params_.validate();
    basis_ = std::make_shared<const KerdockBasis>(params_.m);
    if (params_.erasures) {
        decode_rows_ = params_.m0;
        row_span_ = build_span(*basis_, params_.n2, decode_rows_);
        if (row_span_->rank() != params_.n2)
            throw ConfigError("c is not determined by the first m0 rows of P(c)");
    } else {
        for (unsigned k = 0; k <= params_.m; ++k) {
            auto span = build_span(*basis_, params_.n2, k);
            if (span->rank() == params_.n2) {
                decode_rows_ = k;
                row_span_ = std::move(span);
                break;
            }
        }
    }
}

void RmCodebook::set_erasure_override(Nia nia, ErasurePattern pattern) {
    if (pattern.bits.size() != length()) throw ShapeError("erasure override has the wrong length");
    overrides_[nia] = std::move(pattern);
}

RmCodeword RmCodebook::codeword(Nia nia) const {
    const BcPair bc = nia_to_bc(nia, params_);
    return rm_codeword(bc.b, bc.c, params_.n2, *basis_);
}

ErasurePattern RmCodebook::erasure(Nia nia) const {
    if (const auto it = overrides_.find(nia); it != overrides_.end()) return it->second;
    if (!params_.erasures) return erasure_from_segment({1}, params_.m);
    return erasure_pattern(nia, params_.m, params_.m0, erasure_key_);
}

OnOffSignature RmCodebook::signature(Nia nia) const {
    const RmCodeword w = codeword(nia);
    const ErasurePattern r = erasure(nia);
    OnOffSignature s;
    s.nia = nia;
    s.length = length();
    for (std::size_t a = 0; a < s.length; ++a) {
        if (!r.bits[a]) continue;
        s.slots.push_back(static_cast<std::uint32_t>(a));
        s.values.push_back(w.symbols[a]);
    }
    return s;
}

std::optional<std::uint64_t> RmCodebook::complete(const std::vector<std::uint32_t>& first_rows) const {
    if (first_rows.size() != decode_rows_)
        throw ShapeError("expected " + std::to_string(decode_rows_) + " leading rows");
    SymMatrix partial(params_.m);
    for (unsigned r = 0; r < decode_rows_; ++r) partial.rows[r] = first_rows[r];
    const auto x = row_span_->solve(leading_rows(partial, decode_rows_));
    if (!x) return std::nullopt;
    std::uint64_t c = 0;
    for (unsigned i = 0; i < params_.n2; ++i)
        if (x->get(i)) c |= std::uint64_t{1} << (params_.n2 - 1 - i);
    return c;
}

std::optional<std::pair<SymMatrix, std::uint64_t>> complete_symmetric_matrix(
    const std::vector<std::uint32_t>& first_rows, const RmCodebook& book) {
    const auto c = book.complete(first_rows);
    if (!c) return std::nullopt;
    return std::make_pair(book.basis().combine(*c, book.params().n2), *c);
}

OnOffSignature rm_onoff_signature(Nia nia, const RmCodebook& book) { return book.signature(nia); }

}  // namespace cnd
