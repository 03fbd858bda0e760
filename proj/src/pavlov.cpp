#include "regfm/pavlov.hpp"

#include <nlohmann/json.hpp>

namespace regfm {

Poly generate_block_V(int m, const std::vector<Poly>& F, int nvars, int offset) {
    if ((int)F.size() != m) throw MathError("generate_block_V: need m functions");
    for (const auto& f : F)
        if (f.nvars() != 1) throw MathError("generate_block_V: F_i must be univariate");
    std::vector<int> to_leading{offset};
    auto embedded = [&](const Poly& f) { return f.embed(nvars, to_leading); };

    Poly V = embedded(F[m - 1]);
    // Ordered tuples (k_1..k_s) over [2, m]; every term with index
    // m + s - sum(k_j) <= 0 drops, which bounds s by m - 1.
    Rational s_factorial = 1;
    for (int s = 1; s <= m - 1; ++s) {
        s_factorial *= s;
        std::vector<int> k(s, 2);
        for (;;) {
            int sum = 0;
            for (int v : k) sum += v;
            int idx = m + s - sum;
            if (idx >= 1) {
                Poly deriv = F[idx - 1];
                for (int d = 0; d < s - 1; ++d) deriv = deriv.diff(0);
                if (!deriv.is_zero()) {
                    Poly term = embedded(deriv);
                    for (int v : k) term = term * Poly::variable(nvars, offset + v - 1);
                    V += Rational(1) / s_factorial * term;
                }
            }
            int pos = s - 1;
            while (pos >= 0 && k[pos] == m) k[pos--] = 2;
            if (pos < 0) break;
            ++k[pos];
        }
    }
    return V;
}

Poly generate_V(const JordanSpec& spec, const FunctionFamily& family) {
    if ((int)family.F.size() != spec.blocks())
        throw MathError("generate_V: family must have one function list per block");
    int n = spec.n();
    Poly V = Poly::zero(n);
    for (int a = 0; a < spec.blocks(); ++a)
        V += generate_block_V(spec.sizes[a], family.F[a], n, spec.offset(a));
    return V;
}

Poly chain_ascend(const JordanSpec& spec, const VField<Poly>& mu, const Poly& C,
                  const std::vector<Rational>& base) {
    OpMatrix<Poly> L = mult_operator(spec, mu);
    return integrate_closed_one_form(d_L_function(L, C), base);
}

TruncSeries chain_descend(const JordanSpec& spec, const VField<Poly>& mu, const ChainEntry& C,
                          const std::vector<Rational>& base, int order) {
    int n = spec.n();
    OpMatrix<TruncSeries> Linv = toeplitz_inverse(spec, mu, base, order);
    TruncSeries Cs = std::holds_alternative<Poly>(C)
                         ? TruncSeries::from_poly(std::get<Poly>(C), base, order)
                         : std::get<TruncSeries>(C).truncate_to(order);
    Form1<TruncSeries> w;
    w.comp.reserve(n);
    for (int k = 0; k < n; ++k) {
        TruncSeries acc = TruncSeries::zero(base, order);
        for (int h = 0; h < n; ++h) acc = acc + Linv.at(h, k) * Cs.diff(h);
        w.comp.push_back(acc);
    }
    return integrate_closed_one_form(w);
}

ChainFamily build_chain(const JordanSpec& spec, const FunctionFamily& family,
                        const VField<Poly>& mu, const std::vector<Rational>& base, int lo, int hi,
                        int order) {
    if (lo > 0 || hi < 0) throw ConfigError("build_chain: range must contain 0");
    EvIdReport ev = is_eventual_identity(spec, mu, base);
    if (!ev.isEventual)
        throw PreconditionFailedError("build_chain: mu is not an eventual identity");
    Poly V = generate_V(spec, family);
    OpMatrix<Poly> L = mult_operator(spec, mu);
    if (!dd_L_function(L, V).is_zero())
        throw PreconditionFailedError("build_chain: d d_L V != 0 for the supplied mu");

    ChainFamily chain;
    chain.spec = spec;
    chain.mu = mu;
    chain.base = base;
    chain.order = order;
    chain.entries[0] = V;

    Poly up = V;
    for (int a = 0; a < hi; ++a) {
        up = chain_ascend(spec, mu, up, base);
        chain.entries[a + 1] = up;
    }
    if (lo < 0) {
        ChainEntry cur = V;
        for (int b = 0; b < -lo; ++b) {
            TruncSeries nxt = chain_descend(spec, mu, cur, base, order);
            chain.entries[-b - 1] = nxt;
            cur = nxt;
        }
    }
    verify_chain(chain);
    return chain;
}

void verify_chain(const ChainFamily& chain) {
    const JordanSpec& spec = chain.spec;
    int n = spec.n();
    OpMatrix<Poly> L = mult_operator(spec, chain.mu);
    for (auto& [alpha, entry] : chain.entries) {
        if (alpha != 0) {
            bool zero_at_base = std::holds_alternative<Poly>(entry)
                                    ? std::get<Poly>(entry).eval(chain.base) == 0
                                    : std::get<TruncSeries>(entry).value_at_base() == 0;
            if (!zero_at_base)
                throw MathError("verify_chain: gauge C(base) != 0 at alpha " +
                                std::to_string(alpha));
        }
        auto next_it = chain.entries.find(alpha + 1);
        if (next_it == chain.entries.end()) continue;
        const ChainEntry& next = next_it->second;
        if (std::holds_alternative<Poly>(entry) && std::holds_alternative<Poly>(next)) {
            const Poly& C = std::get<Poly>(entry);
            const Poly& Cn = std::get<Poly>(next);
            for (int k = 0; k < n; ++k) {
                Poly rhs = Poly::zero(n);
                for (int h = 0; h < n; ++h) rhs += L.at(h, k) * C.diff(h);
                if (!(Cn.diff(k) == rhs))
                    throw MathError("verify_chain: exact lift relation fails at alpha " +
                                    std::to_string(alpha));
            }
        } else {
            // Mixed or series pair: compare to the truncation order available.
            auto as_series = [&](const ChainEntry& e, int ord) {
                return std::holds_alternative<Poly>(e)
                           ? TruncSeries::from_poly(std::get<Poly>(e), chain.base, ord)
                           : std::get<TruncSeries>(e);
            };
            int ord = chain.order;
            TruncSeries C = as_series(entry, ord);
            TruncSeries Cn = as_series(next, ord + 1);
            for (int k = 0; k < n; ++k) {
                TruncSeries rhs = TruncSeries::zero(chain.base, C.order());
                for (int h = 0; h < n; ++h)
                    rhs = rhs + TruncSeries::from_poly(L.at(h, k), chain.base, C.order()) *
                                    C.diff(h);
                TruncSeries lhs = Cn.diff(k);
                if (!lhs.equal_to_order(rhs, std::min(lhs.order(), rhs.order())))
                    throw MathError("verify_chain: series lift relation fails at alpha " +
                                    std::to_string(alpha));
            }
        }
    }
}

OpMatrix<Poly> reduction_operator(const JordanSpec& spec, const VField<Poly>& mu, const Poly& V) {
    OpMatrix<Poly> W = mult_operator(spec, mu);
    for (int i = 0; i < W.n; ++i) W.at(i, i) -= V;
    W.block_toeplitz = false;
    return W;
}

Hierarchy hierarchy_build(const JordanSpec& spec, const VField<Poly>& mu, const Poly& a0, int K,
                          const std::vector<Rational>& base) {
    int n = spec.n();
    OpMatrix<Poly> L = mult_operator(spec, mu);
    Form2<Poly> dd = dd_L_function(L, a0);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (!dd.at(j, k).is_zero()) throw NotClosedError(j, k, dd.at(j, k).to_string());

    Hierarchy h;
    h.a.push_back(a0);
    h.V.push_back(identity_matrix_poly(n));
    Form1<Poly> da0 = d_function(a0, n);
    for (int k = 0; k <= K; ++k) {
        const Poly& ak = h.a.back();
        OpMatrix<Poly> Vnext = h.V.back() * L;
        for (int i = 0; i < n; ++i) Vnext.at(i, i) -= ak;
        h.V.push_back(Vnext);
        if (k == K) break;
        Form1<Poly> w = d_L_function(L, ak);
        for (int i = 0; i < n; ++i) w.comp[i] -= ak * da0.comp[i];
        h.a.push_back(integrate_closed_one_form(w, base));
    }
    return h;
}

nlohmann::json chain_to_json(const ChainFamily& chain) {
    nlohmann::json j;
    j["spec"] = chain.spec.to_string();
    std::vector<std::string> base;
    for (const auto& q : chain.base) base.push_back(q.get_str());
    j["base"] = base;
    j["order"] = chain.order;
    std::vector<std::string> mu;
    for (const auto& c : chain.mu.comps) mu.push_back(c.to_string());
    j["mu"] = mu;
    nlohmann::json entries = nlohmann::json::object();
    for (auto& [alpha, entry] : chain.entries) {
        nlohmann::json e;
        if (std::holds_alternative<Poly>(entry)) {
            e["type"] = "poly";
            e["poly"] = std::get<Poly>(entry).to_string();
        } else {
            const TruncSeries& s = std::get<TruncSeries>(entry);
            e["type"] = "series";
            e["order"] = s.order();
            e["shifted_poly"] = s.to_string();
        }
        entries[std::to_string(alpha)] = e;
    }
    j["entries"] = entries;
    return j;
}

ChainFamily chain_from_json(const nlohmann::json& j) {
    ChainFamily chain;
    chain.spec = JordanSpec::parse(j.at("spec").get<std::string>());
    int n = chain.spec.n();
    for (const auto& s : j.at("base")) chain.base.push_back(parse_rational(s.get<std::string>()));
    chain.order = j.at("order").get<int>();
    std::vector<Poly> comps;
    for (const auto& s : j.at("mu")) comps.push_back(Poly::parse(s.get<std::string>(), n));
    chain.mu = VField<Poly>(std::move(comps));
    for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it) {
        int alpha = std::stoi(it.key());
        const nlohmann::json& e = it.value();
        if (e.at("type") == "poly") {
            chain.entries[alpha] = Poly::parse(e.at("poly").get<std::string>(), n);
        } else {
            int ord = e.at("order").get<int>();
            Poly p = Poly::parse(e.at("shifted_poly").get<std::string>(), n);
            chain.entries[alpha] = TruncSeries(chain.base, ord, p);
        }
    }
    return chain;
}

}  // namespace regfm
