#pragma once

#include <string>
#include <vector>

#include "regfm/jordan.hpp"
#include "regfm/poly.hpp"
#include "regfm/series.hpp"
#include "regfm/vfield.hpp"

namespace regfm {

// c^{i(a)}_{j(b)k(g)} = delta^a_b delta^a_g delta^i_{j+k-1}; out-of-range
// position indices contribute zero. Flat 0-based arguments.
inline int structure_constant(const JordanSpec& spec, int i, int j, int k) {
    int a = spec.block_of(i);
    if (spec.block_of(j) != a || spec.block_of(k) != a) return 0;
    return spec.pos_of(i) == spec.pos_of(j) + spec.pos_of(k) - 1 ? 1 : 0;
}

// (X o Y)^{i(a)} = sum_{j+k-1=i} X^{j(a)} Y^{k(a)}: per-block Toeplitz convolution.
template <class S>
VField<S> circ(const JordanSpec& spec, const VField<S>& X, const VField<S>& Y) {
    VField<S> r;
    r.comps.reserve(spec.n());
    for (int alpha = 0; alpha < spec.blocks(); ++alpha) {
        int m = spec.sizes[alpha], off = spec.offset(alpha);
        for (int i = 1; i <= m; ++i) {
            S acc = zero_like(X.comps[0]);
            for (int j = 1; j <= i; ++j) acc = acc + X.comps[off + j - 1] * Y.comps[off + i - j];
            r.comps.push_back(acc);
        }
    }
    return r;
}

// Block-diagonal lower-triangular Toeplitz matrix of mu; applying it to Y
// equals circ(mu, Y).
template <class S>
OpMatrix<S> mult_operator(const JordanSpec& spec, const VField<S>& mu) {
    OpMatrix<S> L(spec.n(), zero_like(mu.comps[0]));
    L.block_toeplitz = true;
    for (int alpha = 0; alpha < spec.blocks(); ++alpha) {
        int m = spec.sizes[alpha], off = spec.offset(alpha);
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= i; ++j) L.at(off + i - 1, off + j - 1) = mu.comps[off + i - j];
    }
    return L;
}

template <class S>
VField<S> unit_field_like(const JordanSpec& spec, const S& sample) {
    VField<S> e;
    e.comps.reserve(spec.n());
    for (int i = 0; i < spec.n(); ++i)
        e.comps.push_back(spec.pos_of(i) == 1 ? constant_like(sample, 1) : zero_like(sample));
    return e;
}

template <class S>
VField<S> circ_power(const JordanSpec& spec, const VField<S>& E, int p) {
    VField<S> acc = unit_field_like(spec, E.comps[0]);
    for (int k = 0; k < p; ++k) acc = circ(spec, acc, E);
    return acc;
}

// e^{i(a)} = delta^i_1 and E^{i(a)} = u^{i(a)} over the polynomial ring.
VField<Poly> unit_field(const JordanSpec& spec);
VField<Poly> euler_field(const JordanSpec& spec);
OpMatrix<Poly> identity_matrix_poly(int n);

// Determinant of the m x m matrix of {E^{ok}}_{k=0..m-1} restricted to block
// alpha, in the coordinate basis. By triangularity against the F-basis this
// equals (E^{2(a)})^{m(m-1)/2}.
struct SpanningResult {
    bool spans;
    Poly det;
};
SpanningResult spanning_check(const JordanSpec& spec, int alpha, const VField<Poly>& E);

// Regularity checklist: leading components pairwise distinct and second
// components nonzero for blocks of size >= 2, both symbolically (nonzero
// polynomial) and pointwise at the supplied base point.
struct RegularityReport {
    bool symbolic_distinct = true;
    bool symbolic_second_nonzero = true;
    bool pointwise_distinct = true;
    bool pointwise_second_nonzero = true;
    std::string detail;

    bool symbolic_ok() const { return symbolic_distinct && symbolic_second_nonzero; }
    bool pointwise_ok() const { return pointwise_distinct && pointwise_second_nonzero; }
};
RegularityReport regularity_check(const JordanSpec& spec, const VField<Poly>& mu,
                                  const std::vector<Rational>& base);

// Per block, L^{-1} = sum_k (-1)^k N^k (mu^1)^{-k-1} with N the strictly
// lower Toeplitz part; only the pivot inverse is series-expanded. Verifies
// L * L^{-1} = I up to the truncation order.
OpMatrix<TruncSeries> toeplitz_inverse(const JordanSpec& spec, const VField<Poly>& mu,
                                       const std::vector<Rational>& base, int order);

OpMatrix<TruncSeries> to_series(const OpMatrix<Poly>& L, const std::vector<Rational>& base,
                                int order);
VField<Poly> parse_vfield(const std::vector<std::string>& lines, int nvars);

}  // namespace regfm
