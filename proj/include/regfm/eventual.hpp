#pragma once

#include <optional>
#include <vector>

#include "regfm/fmanifold.hpp"
#include "regfm/fn_calculus.hpp"

namespace regfm {

// K(X,Y) = L_E(o)(X,Y) - [e,E] o X o Y on coordinate pairs. Symmetric in its
// two slots; stored for i <= j. E is an eventual identity iff K vanishes.
struct KTensor {
    int nn = 0;
    std::vector<Poly> comps;  // [pair(i<=j) * n + t]

    int n() const { return nn; }
    static int sym_index(int n, int i, int j) { return i * n - i * (i - 1) / 2 + (j - i); }
    const Poly& at(int i, int j, int t) const {
        return comps[(i <= j ? sym_index(nn, i, j) : sym_index(nn, j, i)) * nn + t];
    }
    bool is_zero() const {
        for (const auto& p : comps)
            if (!p.is_zero()) return false;
        return true;
    }
};

KTensor k_operator(const JordanSpec& spec, const VField<Poly>& E);

struct EvIdReport {
    bool isEventual = false;
    KTensor kTensor;
    RegularityReport assumptionChecklist;
    bool invertible_at_base = false;
};

EvIdReport is_eventual_identity(const JordanSpec& spec, const VField<Poly>& E,
                                const std::vector<Rational>& base);

struct TorsionEquivalence {
    bool kZero = false;
    bool nZero = false;
    bool assumption_met = false;  // symbolic regularity of E
    bool bridge_zero = false;     // N_L(.,.) - K(L.,.) + K(.,L.) == 0
    bool equivalence_holds = false;
};

TorsionEquivalence torsion_equivalence_check(const JordanSpec& spec, const VField<Poly>& E);

// True iff every component of E depends only on its own block's coordinates.
// Requires vanishing torsion and symbolically distinct leading components.
bool block_locality_check(const JordanSpec& spec, const VField<Poly>& E);

// Pointwise Christoffel symbols, symmetric in the lower pair.
struct Christoffel {
    int nn = 0;
    std::vector<Rational> g;  // [i * npairs + pair(j<=k)]

    Christoffel() = default;
    explicit Christoffel(int n) : nn(n), g(n * (n * (n + 1) / 2), Rational(0)) {}
    int n() const { return nn; }
    int npairs() const { return nn * (nn + 1) / 2; }
    static int pair_index(int n, int j, int k) {
        if (j > k) std::swap(j, k);
        return j * n - j * (j - 1) / 2 + (k - j);
    }
    const Rational& at(int i, int j, int k) const {
        return g[i * npairs() + pair_index(nn, j, k)];
    }
    Rational& at(int i, int j, int k) { return g[i * npairs() + pair_index(nn, j, k)]; }
    bool is_zero() const {
        for (const auto& q : g)
            if (q != 0) return false;
        return true;
    }
};

// Unique torsionless connection with nabla(e) = 0 and d_nabla(mu o) = 0 at a
// point, by exact linear solve. Throws NonUniqueError / InconsistentError.
Christoffel solve_connection(const JordanSpec& spec, const VField<Poly>& mu,
                             const std::vector<Rational>& point);

struct NablaProductPointResult {
    std::vector<Rational> point;
    bool nabla_c_zero = false;     // nabla_E c == 0 at the point
    bool identity_holds = false;   // nabla_E c = Lie_E c - c.c.[e,E] exactly
    Rational max_abs_residual = 0; // max |nabla_E c^i_{jh}|
};

// The connection is the one fixed by mu = E; connection_mu overrides that
// choice (needed to exercise fields like e for which the defining system is
// underdetermined).
std::vector<NablaProductPointResult> nabla_product_check(
    const JordanSpec& spec, const VField<Poly>& E,
    const std::vector<std::vector<Rational>>& points,
    const VField<Poly>* connection_mu = nullptr);

}  // namespace regfm
