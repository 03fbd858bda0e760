#include "regfm/jet.hpp"

#include <algorithm>
#include <sstream>

#include "regfm/errors.hpp"

namespace regfm {

namespace {

// All multi-indices over nvars with total order <= cap, graded then lex.
void enumerate_multi(int nvars, int cap, std::vector<std::vector<int>>& out) {
    std::vector<int> K(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars) {
            out.push_back(K);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            K[pos] = e;
            rec(pos + 1, left - e);
        }
        K[pos] = 0;
    };
    rec(0, cap);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da < db;
        return a < b;
    });
}

}  // namespace

JetContext::JetContext(int nvars, int cap) : nvars_(nvars), cap_(cap) {
    std::vector<std::vector<int>> multis;
    enumerate_multi(nvars, cap, multis);
    for (const auto& K : multis) symbols_.push_back(JetKey{JetKind::VFun, -1, K});
    for (int c = 0; c < nvars; ++c)
        for (const auto& K : multis) symbols_.push_back(JetKey{JetKind::MuComp, c, K});
    for (int id = 0; id < (int)symbols_.size(); ++id) index_[symbols_[id]] = id;
}

int JetContext::mu_id(int comp, const std::vector<int>& K) const {
    auto it = index_.find(JetKey{JetKind::MuComp, comp, K});
    if (it == index_.end()) throw MathError("jet symbol out of range (mu)");
    return it->second;
}

int JetContext::v_id(const std::vector<int>& K) const {
    auto it = index_.find(JetKey{JetKind::VFun, -1, K});
    if (it == index_.end()) throw MathError("jet symbol out of range (V)");
    return it->second;
}

int JetContext::prolong(int id, int var) const {
    JetKey k = symbols_[id];
    k.K[var] += 1;
    auto it = index_.find(k);
    if (it == index_.end())
        throw MathError("jet prolongation exceeds derivative cap " + std::to_string(cap_));
    return it->second;
}

std::string JetContext::name(int id) const {
    const JetKey& k = symbols_[id];
    std::ostringstream os;
    if (k.kind == JetKind::VFun)
        os << "V";
    else
        os << "mu" << (k.comp + 1);
    int ord = 0;
    for (int x : k.K) ord += x;
    if (ord > 0) {
        os << "_(";
        bool first = true;
        for (int v = 0; v < (int)k.K.size(); ++v)
            for (int rep = 0; rep < k.K[v]; ++rep) {
                if (!first) os << ",";
                os << (v + 1);
                first = false;
            }
        os << ")";
    }
    return os.str();
}

JetExpr JetExpr::diff(int var) const {
    Poly out(ctx_->nsymbols());
    for (const auto& [m, c] : p_.terms()) {
        for (const auto& [sym, e] : m.factors) {
            Monomial rest = m.divide_var(sym);
            Monomial prolonged = rest.times(Monomial::var(ctx_->prolong(sym, var)));
            out.add_term(prolonged, c * e);
        }
    }
    return {ctx_, out};
}

JetExpr JetExpr::kill(const std::function<bool(const JetKey&)>& pred) const {
    Poly out(ctx_->nsymbols());
    for (const auto& [m, c] : p_.terms()) {
        bool dead = false;
        for (const auto& [sym, e] : m.factors)
            if (pred(ctx_->key(sym))) {
                dead = true;
                break;
            }
        if (!dead) out.add_term(m, c);
    }
    return {ctx_, out};
}

Poly JetExpr::instantiate(const std::vector<Poly>& mu, const Poly& V) const {
    if ((int)mu.size() != ctx_->nvars()) throw MathError("jet instantiate: wrong mu size");
    int n = V.nvars();
    // Cache the concrete polynomial for each symbol on demand.
    std::vector<Poly> cache(ctx_->nsymbols());
    std::vector<bool> have(ctx_->nsymbols(), false);
    auto concrete = [&](int id) -> const Poly& {
        if (!have[id]) {
            const JetKey& k = ctx_->key(id);
            Poly p = (k.kind == JetKind::VFun) ? V : mu[k.comp];
            for (int v = 0; v < (int)k.K.size(); ++v)
                for (int rep = 0; rep < k.K[v]; ++rep) p = p.diff(v);
            cache[id] = p;
            have[id] = true;
        }
        return cache[id];
    };
    Poly out(n);
    for (const auto& [m, c] : p_.terms()) {
        Poly t = Poly::constant(n, c);
        for (const auto& [sym, e] : m.factors)
            for (int rep = 0; rep < e; ++rep) t = t * concrete(sym);
        out += t;
    }
    return out;
}

std::string JetExpr::to_string() const {
    if (p_.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p_.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool need_coeff = (a != 1) || m.factors.empty();
        if (need_coeff) os << a.get_str();
        bool need_star = need_coeff;
        for (const auto& [sym, e] : m.factors) {
            if (need_star) os << "*";
            os << ctx_->name(sym);
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace regfm
