#include "regfm/gtsystem.hpp"

#include <sstream>

namespace regfm {

ClassicalResiduals classical_gt_residual(const std::vector<Poly>& mu, const Poly& V) {
    int n = (int)mu.size();
    ClassicalResiduals out;
    out.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Poly d = mu[i] - mu[j];
            if (d.is_zero())
                throw DegenerateVelocitiesError("classical_gt_residual: mu^" + std::to_string(i + 1) +
                                                " == mu^" + std::to_string(j + 1) +
                                                " identically");
            out.r1[{i, j}] = d * mu[j].diff(i) - V.diff(i);
            if (i < j)
                out.r2[{i, j}] = d * d * V.diff(i).diff(j) -
                                 Rational(2) * V.diff(i) * V.diff(j);
        }
    return out;
}

Poly dkp_w_reconstruct(const JordanSpec& spec, const VField<Poly>& mu, const Poly& V,
                       const std::vector<Rational>& base) {
    int n = spec.n();
    Form1<Poly> w;
    w.comp.reserve(n);
    for (int i = 0; i < n; ++i) {
        Poly acc = Poly::zero(n);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                if (structure_constant(spec, k, i, j)) acc += V.diff(k) * mu.comps[j];
        w.comp.push_back(acc);
    }
    return integrate_closed_one_form(w, base);
}

namespace {

// Generic jet data for a given spec: mu^i and V as order-zero symbols.
std::pair<VField<JetExpr>, JetExpr> generic_jet_data(const JordanSpec& spec,
                                                     const JetCtxPtr& ctx) {
    int n = spec.n();
    std::vector<int> K0(n, 0);
    VField<JetExpr> mu;
    mu.comps.reserve(n);
    for (int i = 0; i < n; ++i) mu.comps.push_back(JetExpr::mu(ctx, i, K0));
    JetExpr V = JetExpr::v(ctx, K0);
    return {mu, V};
}

}  // namespace

JetExpr step1_identity_check(const JordanSpec& spec, int alpha, int j, const JetCtxPtr& ctx) {
    int m = spec.sizes[alpha];
    if (j < 2 || j > m)
        throw PreconditionFailedError("step1_identity_check: need 2 <= j <= block size");
    auto [mu, V] = generic_jet_data(spec, ctx);
    GTResiduals<JetExpr> res = generalized_gt_residual(spec, mu, V);
    JetExpr acc = JetExpr::zero(ctx);
    for (int s = 1; s <= m - j + 1; ++s) {
        int i_flat = spec.flat(alpha, s);
        int j_flat = spec.flat(alpha, j + s - 1);
        acc = acc + res.R2(i_flat, j_flat);
    }
    return acc;
}

OneBlockIdentities oneblock_identity_check(int n, const JetCtxPtr& ctx) {
    if (n < 2) throw PreconditionFailedError("oneblock_identity_check: need block size >= 2");
    JordanSpec spec({n});
    auto [mu, V] = generic_jet_data(spec, ctx);
    GTResiduals<JetExpr> res = generalized_gt_residual(spec, mu, V);

    auto kill_higher_v = [](const JetKey& k) {
        if (k.kind != JetKind::VFun) return false;
        for (std::size_t v = 1; v < k.K.size(); ++v)
            if (k.K[v] > 0) return true;
        return false;
    };
    auto kill_higher_mu1 = [](const JetKey& k) {
        if (k.kind != JetKind::MuComp || k.comp != 0) return false;
        for (std::size_t v = 2; v < k.K.size(); ++v)
            if (k.K[v] > 0) return true;
        return false;
    };

    OneBlockIdentities out{JetExpr::zero(ctx), JetExpr::zero(ctx)};
    JetExpr acc = JetExpr::zero(ctx);
    for (int i = 2; i <= n; ++i) acc = acc + res.R2(i - 1, i - 1);
    out.diagonal_sum = acc.kill(kill_higher_v).kill(kill_higher_mu1);
    out.r1_component = res.r1.at(0, 1).kill(kill_higher_v);
    return out;
}

NonexistenceReport nonexistence_report(const JordanSpec& spec, const VField<Poly>& mu,
                                       const Poly& V,
                                       const std::vector<std::vector<Rational>>& samples) {
    int n = spec.n();
    NonexistenceReport rep;
    GTResiduals<Poly> res = generalized_gt_residual(spec, mu, V);
    rep.precondition_ok = res.all_zero();
    if (!rep.precondition_ok)
        throw PreconditionFailedError("nonexistence_report: gGT residuals do not vanish");

    std::ostringstream os;
    for (int a = 0; a < spec.blocks(); ++a) {
        if (spec.sizes[a] < 2) continue;
        for (int j = 2; j <= spec.sizes[a]; ++j)
            if (!V.diff(spec.flat(a, j)).is_zero()) {
                rep.i_higher_v_zero = false;
                os << "dV/dr" << spec.flat(a, j) + 1 << " != 0; ";
            }
        if (!V.diff(spec.flat(a, 1)).is_zero()) {
            rep.iv_leading_v_zero = false;
            os << "dV/dr" << spec.flat(a, 1) + 1 << " != 0; ";
        }
    }
    for (int a = 0; a < spec.blocks(); ++a)
        for (int b = 0; b < spec.blocks(); ++b) {
            if (spec.sizes[b] < 2) continue;
            for (int j = 2; j <= spec.sizes[b]; ++j)
                if (!mu.comps[spec.flat(a, 1)].diff(spec.flat(b, j)).is_zero()) {
                    rep.ii_higher_mu_zero = false;
                    os << "d mu^1(" << a + 1 << ")/dr" << spec.flat(b, j) + 1 << " != 0; ";
                }
        }
    for (int a = 0; a < spec.blocks(); ++a)
        for (int b = 0; b < spec.blocks(); ++b) {
            if (a == b) continue;
            int la = spec.flat(a, 1), lb = spec.flat(b, 1);
            Poly d = mu.comps[lb] - mu.comps[la];
            Poly gt1 = V.diff(lb) - d * mu.comps[la].diff(lb);
            if (!gt1.is_zero()) {
                rep.iii_leading_classical = false;
                os << "GT leading eq (" << b + 1 << "," << a + 1 << ") violated; ";
            }
            if (a < b) {
                Poly gt2 = d * d * V.diff(la).diff(lb) - Rational(2) * V.diff(la) * V.diff(lb);
                if (!gt2.is_zero()) {
                    rep.iii_leading_classical = false;
                    os << "GT leading 2nd-order eq (" << a + 1 << "," << b + 1 << ") violated; ";
                }
            }
        }
    // Pointwise triviality summary: which partials of V vanish identically
    // is reported, not judged.
    for (const auto& pt : samples) {
        std::ostringstream line;
        line << "V partials at (";
        for (std::size_t c = 0; c < pt.size(); ++c)
            line << (c ? "," : "") << pt[c].get_str();
        line << "):";
        for (int k = 0; k < n; ++k)
            line << " " << V.diff(k).eval(pt).get_str();
        rep.detail.push_back(line.str());
    }
    if (!os.str().empty()) rep.detail.push_back(os.str());
    return rep;
}

}  // namespace regfm
