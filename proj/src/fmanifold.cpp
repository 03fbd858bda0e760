#include "regfm/fmanifold.hpp"

#include <sstream>

namespace regfm {

VField<Poly> unit_field(const JordanSpec& spec) {
    int n = spec.n();
    VField<Poly> e;
    e.comps.reserve(n);
    for (int i = 0; i < n; ++i)
        e.comps.push_back(spec.pos_of(i) == 1 ? Poly::constant(n, 1) : Poly::zero(n));
    return e;
}

VField<Poly> euler_field(const JordanSpec& spec) {
    int n = spec.n();
    VField<Poly> E;
    E.comps.reserve(n);
    for (int i = 0; i < n; ++i) E.comps.push_back(Poly::variable(n, i));
    return E;
}

OpMatrix<Poly> identity_matrix_poly(int n) {
    OpMatrix<Poly> I(n, Poly::zero(n));
    for (int i = 0; i < n; ++i) I.at(i, i) = Poly::constant(n, 1);
    return I;
}

namespace {

Poly det_minor_expansion(const std::vector<std::vector<Poly>>& M) {
    int m = (int)M.size();
    int n = M[0][0].nvars();
    // Expansion over column subsets, row by row.
    std::vector<Poly> cur(1u << m, Poly::zero(n));
    cur[0] = Poly::constant(n, 1);
    for (int row = 0; row < m; ++row) {
        std::vector<Poly> next(1u << m, Poly::zero(n));
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            if (__builtin_popcount(mask) != row || cur[mask].is_zero()) continue;
            int parity = 0;
            for (int col = 0; col < m; ++col) {
                if (mask & (1u << col)) {
                    ++parity;
                    continue;
                }
                if (!M[row][col].is_zero()) {
                    Poly contrib = cur[mask] * M[row][col];
                    // inversions added: used columns above col
                    if ((row - parity) % 2) contrib = -contrib;
                    next[mask | (1u << col)] += contrib;
                }
            }
        }
        cur = std::move(next);
    }
    return cur[(1u << m) - 1];
}

}  // namespace

SpanningResult spanning_check(const JordanSpec& spec, int alpha, const VField<Poly>& E) {
    int m = spec.sizes[alpha], off = spec.offset(alpha);
    std::vector<std::vector<Poly>> M(m, std::vector<Poly>(m, Poly::zero(spec.n())));
    VField<Poly> pw = unit_field(spec);
    for (int k = 0; k < m; ++k) {
        for (int s = 0; s < m; ++s) M[k][s] = pw.comps[off + s];
        pw = circ(spec, pw, E);
    }
    Poly det = det_minor_expansion(M);
    return SpanningResult{!det.is_zero(), det};
}

RegularityReport regularity_check(const JordanSpec& spec, const VField<Poly>& mu,
                                  const std::vector<Rational>& base) {
    RegularityReport rep;
    std::ostringstream detail;
    for (int a = 0; a < spec.blocks(); ++a) {
        for (int b = a + 1; b < spec.blocks(); ++b) {
            Poly d = mu.comps[spec.flat(a, 1)] - mu.comps[spec.flat(b, 1)];
            if (d.is_zero()) {
                rep.symbolic_distinct = false;
                detail << "mu^1 blocks " << a + 1 << "," << b + 1 << " coincide symbolically; ";
            }
            if (!base.empty() && d.eval(base) == 0) {
                rep.pointwise_distinct = false;
                detail << "mu^1 blocks " << a + 1 << "," << b + 1 << " coincide at base; ";
            }
        }
        if (spec.sizes[a] >= 2) {
            const Poly& second = mu.comps[spec.flat(a, 2)];
            if (second.is_zero()) {
                rep.symbolic_second_nonzero = false;
                detail << "mu^2 block " << a + 1 << " vanishes symbolically; ";
            }
            if (!base.empty() && second.eval(base) == 0) {
                rep.pointwise_second_nonzero = false;
                detail << "mu^2 block " << a + 1 << " vanishes at base; ";
            }
        }
    }
    rep.detail = detail.str();
    return rep;
}

OpMatrix<TruncSeries> to_series(const OpMatrix<Poly>& L, const std::vector<Rational>& base,
                                int order) {
    OpMatrix<TruncSeries> R(L.n, TruncSeries::zero(base, order));
    R.block_toeplitz = L.block_toeplitz;
    for (int i = 0; i < L.n; ++i)
        for (int j = 0; j < L.n; ++j) R.at(i, j) = TruncSeries::from_poly(L.at(i, j), base, order);
    return R;
}

OpMatrix<TruncSeries> toeplitz_inverse(const JordanSpec& spec, const VField<Poly>& mu,
                                       const std::vector<Rational>& base, int order) {
    int n = spec.n();
    for (int a = 0; a < spec.blocks(); ++a)
        if (mu.comps[spec.flat(a, 1)].eval(base) == 0)
            throw SingularPivotError("toeplitz_inverse: mu^1 of block " + std::to_string(a + 1) +
                                     " vanishes at base point");
    OpMatrix<TruncSeries> R(n, TruncSeries::zero(base, order));
    for (int a = 0; a < spec.blocks(); ++a) {
        int m = spec.sizes[a], off = spec.offset(a);
        TruncSeries pivot_inv =
            TruncSeries::from_poly(mu.comps[spec.flat(a, 1)], base, order).inverse();
        // Powers of the nilpotent strictly lower Toeplitz part N: entries of
        // N^k are Toeplitz in the products of the mu tail.
        std::vector<std::vector<TruncSeries>> Npow;  // Npow[k][i*m+j]
        std::vector<TruncSeries> id(m * m, TruncSeries::zero(base, order));
        for (int i = 0; i < m; ++i) id[i * m + i] = TruncSeries::constant(base, order, 1);
        Npow.push_back(id);
        std::vector<TruncSeries> N(m * m, TruncSeries::zero(base, order));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < i; ++j)
                N[i * m + j] = TruncSeries::from_poly(mu.comps[off + i - j], base, order);
        for (int k = 1; k < m; ++k) {
            std::vector<TruncSeries> P(m * m, TruncSeries::zero(base, order));
            const auto& prev = Npow.back();
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    TruncSeries acc = TruncSeries::zero(base, order);
                    for (int h = 0; h < m; ++h) acc = acc + prev[i * m + h] * N[h * m + j];
                    P[i * m + j] = acc;
                }
            Npow.push_back(P);
        }
        std::vector<TruncSeries> piv_pow;  // (mu^1)^{-(k+1)}
        piv_pow.push_back(pivot_inv);
        for (int k = 1; k < m; ++k) piv_pow.push_back(piv_pow.back() * pivot_inv);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                TruncSeries acc = TruncSeries::zero(base, order);
                for (int k = 0; k < m; ++k) {
                    const TruncSeries& nk = Npow[k][i * m + j];
                    if (nk.is_zero()) continue;
                    TruncSeries t = nk * piv_pow[k];
                    if (k % 2) t = -t;
                    acc = acc + t;
                }
                R.at(off + i, off + j) = acc;
            }
    }
    // L * L^{-1} = I up to the truncation order.
    OpMatrix<TruncSeries> Ls = to_series(mult_operator(spec, mu), base, order);
    OpMatrix<TruncSeries> prod = Ls * R;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            TruncSeries expect = TruncSeries::constant(base, order, i == j ? 1 : 0);
            if (!prod.at(i, j).equal_to_order(expect, prod.at(i, j).order()))
                throw MathError("toeplitz_inverse: L*L^{-1} != I at entry (" +
                                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    return R;
}

VField<Poly> parse_vfield(const std::vector<std::string>& lines, int nvars) {
    VField<Poly> v;
    v.comps.reserve(lines.size());
    for (const auto& ln : lines) v.comps.push_back(Poly::parse(ln, nvars));
    return v;
}

}  // namespace regfm
