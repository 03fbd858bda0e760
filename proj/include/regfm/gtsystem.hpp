#pragma once

#include <map>
#include <utility>
#include <vector>

#include "regfm/fmanifold.hpp"
#include "regfm/forms.hpp"
#include "regfm/integrate.hpp"
#include "regfm/jet.hpp"

namespace regfm {

// Residuals of the generalised Gibbons-Tsarev system in David-Hertling
// coordinates. r2[i][j] is the left side of the first-order equation
//   mu^h (c^i_{hk} d_j mu^k + c^i_{jk} d_h mu^k - c^k_{jh} d_k mu^i)
//   - mu^h c^i_{js} c^s_{hk} d_e mu^k + e^i d_j V - delta^i_j d_e V,
// and r1 collects the antisymmetric second-order equation
//   mu^t (c^s_{ti} d_s d_j V - c^s_{tj} d_s d_i V)
//   - (c^m_{js} d_i mu^s - c^m_{is} d_j mu^s) d_m V.
template <class S>
struct GTResiduals {
    int n = 0;
    std::vector<S> r2;  // n*n, row-major [i][j]
    Form2<S> r1;

    const S& R2(int i, int j) const { return r2[i * n + j]; }
    bool all_zero() const {
        for (const auto& s : r2)
            if (!s.is_zero()) return false;
        return r1.is_zero();
    }
};

template <class S>
GTResiduals<S> generalized_gt_residual(const JordanSpec& spec, const VField<S>& mu, const S& V) {
    int n = spec.n();
    GTResiduals<S> out;
    out.n = n;
    S z = zero_like(V);
    out.r2.assign(n * n, z);
    out.r1 = Form2<S>(n, z);

    std::vector<S> dmu_e;  // d_e mu^k
    dmu_e.reserve(n);
    for (int k = 0; k < n; ++k) {
        S acc = z;
        for (int a = 0; a < spec.blocks(); ++a) acc = acc + mu.comps[k].diff(spec.flat(a, 1));
        dmu_e.push_back(acc);
    }
    S dV_e = z;
    for (int a = 0; a < spec.blocks(); ++a) dV_e = dV_e + V.diff(spec.flat(a, 1));

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            S acc = z;
            for (int h = 0; h < n; ++h) {
                for (int k = 0; k < n; ++k) {
                    if (structure_constant(spec, i, h, k))
                        acc = acc + mu.comps[h] * mu.comps[k].diff(j);
                    if (structure_constant(spec, k, j, h))
                        acc = acc - mu.comps[h] * mu.comps[i].diff(k);
                }
            }
            for (int k = 0; k < n; ++k) {
                if (!structure_constant(spec, i, j, k)) continue;
                for (int h = 0; h < n; ++h) acc = acc + mu.comps[h] * mu.comps[k].diff(h);
            }
            for (int s = 0; s < n; ++s) {
                if (!structure_constant(spec, i, j, s)) continue;
                for (int h = 0; h < n; ++h)
                    for (int k = 0; k < n; ++k)
                        if (structure_constant(spec, s, h, k)) acc = acc - mu.comps[h] * dmu_e[k];
            }
            if (spec.pos_of(i) == 1) acc = acc + V.diff(j);
            if (i == j) acc = acc - dV_e;
            out.r2[i * n + j] = acc;
        }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            S acc = z;
            for (int t = 0; t < n; ++t)
                for (int s = 0; s < n; ++s) {
                    if (structure_constant(spec, s, t, i))
                        acc = acc + mu.comps[t] * V.diff(s).diff(j);
                    if (structure_constant(spec, s, t, j))
                        acc = acc - mu.comps[t] * V.diff(s).diff(i);
                }
            for (int m = 0; m < n; ++m)
                for (int s = 0; s < n; ++s) {
                    if (structure_constant(spec, m, j, s))
                        acc = acc - mu.comps[s].diff(i) * V.diff(m);
                    if (structure_constant(spec, m, i, s))
                        acc = acc + mu.comps[s].diff(j) * V.diff(m);
                }
            out.r1.at(i, j) = acc;
        }
    return out;
}

// Cleared-denominator residuals of the classical system:
//   r1(i,j) = (mu^i - mu^j) d_i mu^j - d_i V,
//   r2(i,j) = (mu^i - mu^j)^2 d_i d_j V - 2 d_i V d_j V,   i != j.
struct ClassicalResiduals {
    int n = 0;
    std::map<std::pair<int, int>, Poly> r1;  // all ordered pairs i != j
    std::map<std::pair<int, int>, Poly> r2;  // unordered pairs i < j
    bool all_zero() const {
        for (auto& [k, p] : r1)
            if (!p.is_zero()) return false;
        for (auto& [k, p] : r2)
            if (!p.is_zero()) return false;
        return true;
    }
};

ClassicalResiduals classical_gt_residual(const std::vector<Poly>& mu, const Poly& V);

template <class S>
VField<S> lambda_field(const JordanSpec& spec, const VField<S>& mu, const S& V) {
    VField<S> lam = circ(spec, mu, mu);
    VField<S> e = unit_field_like(spec, V);
    for (int i = 0; i < spec.n(); ++i) lam.comps[i] = lam.comps[i] + V * e.comps[i];
    return lam;
}

// W with d_i W = d_k V c^k_{ij} mu^j, integrated from base; throws
// NotClosedError when the data is not a reduction.
Poly dkp_w_reconstruct(const JordanSpec& spec, const VField<Poly>& mu, const Poly& V,
                       const std::vector<Rational>& base);

// Sum over s of R2^{s(a)}_{(j+s-1)(a)} with fully generic jet data; the
// telescoping collapses to the single symbol d_{j(a)} V.
JetExpr step1_identity_check(const JordanSpec& spec, int alpha, int j, const JetCtxPtr& ctx);

// Single block of size n: the diagonal sum of R2 for i = 2..n under the
// substitutions d_j V = 0 (j>=2), d_j mu^1 = 0 (j>=3), and the (1,2)
// component of R1 under d_j V = 0 (j>=2).
struct OneBlockIdentities {
    JetExpr diagonal_sum;   // expected: n mu^2 d_2 mu^1 - (n-1) d_1 V
    JetExpr r1_component;   // expected: (d_2 mu^1)(d_1 V)
};
OneBlockIdentities oneblock_identity_check(int n, const JetCtxPtr& ctx);

struct NonexistenceReport {
    bool precondition_ok = false;     // gGT residuals vanish
    bool i_higher_v_zero = true;      // d_{j(a)} V = 0, j >= 2
    bool ii_higher_mu_zero = true;    // d_{j(b)} mu^{1(a)} = 0, j >= 2
    bool iii_leading_classical = true;  // GTblocks1/2 hold with cleared denominators
    bool iv_leading_v_zero = true;    // d_{1(a)} V = 0 when m_a >= 2
    std::vector<std::string> detail;
    bool all_hold() const {
        return i_higher_v_zero && ii_higher_mu_zero && iii_leading_classical && iv_leading_v_zero;
    }
};

NonexistenceReport nonexistence_report(const JordanSpec& spec, const VField<Poly>& mu,
                                       const Poly& V,
                                       const std::vector<std::vector<Rational>>& samples);

}  // namespace regfm
