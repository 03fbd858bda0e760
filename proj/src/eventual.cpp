#include "regfm/eventual.hpp"

#include <sstream>

#include "regfm/linsolve.hpp"

namespace regfm {

namespace {

// [e, E]^s = sum over blocks of the derivative of E^s along the block's
// leading coordinate (e has constant components).
Poly unit_bracket_component(const JordanSpec& spec, const VField<Poly>& E, int s) {
    Poly acc = Poly::zero(spec.n());
    for (int a = 0; a < spec.blocks(); ++a) acc += E.comps[s].diff(spec.flat(a, 1));
    return acc;
}

}  // namespace

KTensor k_operator(const JordanSpec& spec, const VField<Poly>& E) {
    int n = spec.n();
    KTensor K;
    K.nn = n;
    K.comps.assign((n * (n + 1) / 2) * n, Poly::zero(n));
    std::vector<Poly> ebr(n, Poly::zero(n));
    for (int s = 0; s < n; ++s) ebr[s] = unit_bracket_component(spec, E, s);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int t = 0; t < n; ++t) {
                Poly acc = Poly::zero(n);
                for (int s = 0; s < n; ++s) {
                    if (structure_constant(spec, s, i, j)) acc -= E.comps[t].diff(s);
                    if (structure_constant(spec, t, s, j)) acc += E.comps[s].diff(i);
                    if (structure_constant(spec, t, i, s)) acc += E.comps[s].diff(j);
                }
                for (int k = 0; k < n; ++k) {
                    if (!structure_constant(spec, k, i, j)) continue;
                    for (int s = 0; s < n; ++s)
                        if (structure_constant(spec, t, k, s)) acc -= ebr[s];
                }
                K.comps[KTensor::sym_index(n, i, j) * n + t] = acc;
            }
        }
    }
    return K;
}

EvIdReport is_eventual_identity(const JordanSpec& spec, const VField<Poly>& E,
                                const std::vector<Rational>& base) {
    EvIdReport rep;
    rep.kTensor = k_operator(spec, E);
    rep.isEventual = rep.kTensor.is_zero();
    rep.assumptionChecklist = regularity_check(spec, E, base);
    rep.invertible_at_base = true;
    if (!base.empty()) {
        for (int a = 0; a < spec.blocks(); ++a)
            if (E.comps[spec.flat(a, 1)].eval(base) == 0) rep.invertible_at_base = false;
    }
    return rep;
}

TorsionEquivalence torsion_equivalence_check(const JordanSpec& spec, const VField<Poly>& E) {
    int n = spec.n();
    TorsionEquivalence res;
    KTensor K = k_operator(spec, E);
    OpMatrix<Poly> L = mult_operator(spec, E);
    Torsion<Poly> N = nijenhuis(L);
    res.kZero = K.is_zero();
    res.nZero = N.is_zero();
    res.assumption_met = regularity_check(spec, E, {}).symbolic_ok();

    // N_L(d_a, d_b) = K(L d_a, d_b) - K(d_a, L d_b), componentwise.
    res.bridge_zero = true;
    for (int a = 0; a < n && res.bridge_zero; ++a)
        for (int b = a + 1; b < n && res.bridge_zero; ++b)
            for (int t = 0; t < n; ++t) {
                Poly rhs = Poly::zero(n);
                for (int h = 0; h < n; ++h) {
                    if (!L.at(h, a).is_zero()) rhs += L.at(h, a) * K.at(h, b, t);
                    if (!L.at(h, b).is_zero()) rhs -= L.at(h, b) * K.at(a, h, t);
                }
                if (!(N.at(t, a, b) == rhs)) {
                    res.bridge_zero = false;
                    break;
                }
            }

    res.equivalence_holds = res.assumption_met ? (res.kZero == res.nZero)
                                               : (!res.kZero || res.nZero);
    return res;
}

bool block_locality_check(const JordanSpec& spec, const VField<Poly>& E) {
    if (!nijenhuis(mult_operator(spec, E)).is_zero())
        throw PreconditionFailedError("block_locality_check: Nijenhuis torsion of E-mult nonzero");
    RegularityReport reg = regularity_check(spec, E, {});
    if (!reg.symbolic_distinct)
        throw PreconditionFailedError(
            "block_locality_check: leading components not symbolically distinct");
    for (int a = 0; a < spec.blocks(); ++a)
        for (int p = 1; p <= spec.sizes[a]; ++p)
            for (int b = 0; b < spec.blocks(); ++b) {
                if (b == a) continue;
                for (int j = 1; j <= spec.sizes[b]; ++j)
                    if (!E.comps[spec.flat(a, p)].diff(spec.flat(b, j)).is_zero()) return false;
            }
    return true;
}

Christoffel solve_connection(const JordanSpec& spec, const VField<Poly>& mu,
                             const std::vector<Rational>& point) {
    int n = spec.n();
    OpMatrix<Poly> L = mult_operator(spec, mu);
    int nunk = n * (n * (n + 1) / 2);
    auto unknown = [&](int i, int j, int k) {
        return i * (n * (n + 1) / 2) + Christoffel::pair_index(n, j, k);
    };
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;

    // nabla e = 0: Gamma^i_{j s} e^s = 0 for every (i, j).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Rational> row(nunk, Rational(0));
            for (int a = 0; a < spec.blocks(); ++a) row[unknown(i, j, spec.flat(a, 1))] += 1;
            A.push_back(std::move(row));
            b.push_back(0);
        }

    // d_nabla(mu o) = 0: d_j L^i_k - d_k L^i_j + Gamma^i_{js} L^s_k
    // - Gamma^i_{ks} L^s_j = 0 at the point (the Gamma^s_{jk} pair cancels
    // for symmetric unknowns).
    std::vector<std::vector<Rational>> Lval(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Lval[i][j] = L.at(i, j).eval(point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                std::vector<Rational> row(nunk, Rational(0));
                for (int s = 0; s < n; ++s) {
                    row[unknown(i, j, s)] += Lval[s][k];
                    row[unknown(i, k, s)] -= Lval[s][j];
                }
                A.push_back(std::move(row));
                b.push_back(-(L.at(i, k).diff(j) - L.at(i, j).diff(k)).eval(point));
            }

    LinSolveResult sol = solve_linear(std::move(A), std::move(b));
    if (sol.status == LinSolveStatus::NonUnique)
        throw NonUniqueError("solve_connection: connection not unique at the given point");
    if (sol.status == LinSolveStatus::Inconsistent)
        throw InconsistentError("solve_connection: defining conditions inconsistent at the point");
    Christoffel G(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) G.at(i, j, k) = sol.x[unknown(i, j, k)];
    return G;
}

std::vector<NablaProductPointResult> nabla_product_check(
    const JordanSpec& spec, const VField<Poly>& E,
    const std::vector<std::vector<Rational>>& points, const VField<Poly>* connection_mu) {
    int n = spec.n();
    std::vector<NablaProductPointResult> out;
    for (const auto& pt : points) {
        NablaProductPointResult res;
        res.point = pt;
        Christoffel G = solve_connection(spec, connection_mu ? *connection_mu : E, pt);
        std::vector<Rational> Ev(n);
        std::vector<std::vector<Rational>> dE(n, std::vector<Rational>(n));
        for (int s = 0; s < n; ++s) {
            Ev[s] = E.comps[s].eval(pt);
            for (int v = 0; v < n; ++v) dE[v][s] = E.comps[s].diff(v).eval(pt);
        }
        std::vector<Rational> ebr(n, Rational(0));
        for (int s = 0; s < n; ++s)
            for (int a = 0; a < spec.blocks(); ++a) ebr[s] += dE[spec.flat(a, 1)][s];

        res.nabla_c_zero = true;
        res.identity_holds = true;
        res.max_abs_residual = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int h = 0; h < n; ++h) {
                    Rational nab = 0;
                    for (int s = 0; s < n; ++s) {
                        if (Ev[s] == 0) continue;
                        Rational inner = 0;
                        for (int t = 0; t < n; ++t) {
                            if (structure_constant(spec, t, j, h)) inner += G.at(i, s, t);
                            if (structure_constant(spec, i, t, h)) inner -= G.at(t, s, j);
                            if (structure_constant(spec, i, j, t)) inner -= G.at(t, s, h);
                        }
                        nab += Ev[s] * inner;
                    }
                    Rational lie = 0;
                    for (int s = 0; s < n; ++s) {
                        if (structure_constant(spec, s, h, j)) lie -= dE[s][i];
                        if (structure_constant(spec, i, s, j)) lie += dE[h][s];
                        if (structure_constant(spec, i, h, s)) lie += dE[j][s];
                    }
                    Rational cc = 0;
                    for (int s = 0; s < n; ++s) {
                        if (!structure_constant(spec, i, j, s)) continue;
                        for (int t = 0; t < n; ++t)
                            if (structure_constant(spec, s, h, t)) cc += ebr[t];
                    }
                    if (nab != 0) {
                        res.nabla_c_zero = false;
                        Rational mag = abs(nab);
                        if (mag > res.max_abs_residual) res.max_abs_residual = mag;
                    }
                    if (nab != lie - cc) res.identity_holds = false;
                }
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace regfm
