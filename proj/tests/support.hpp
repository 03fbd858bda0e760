#pragma once

// Shared test fixtures: hand transcriptions of the thirteen reference V
// formulas, independent oracles, and generators. Everything here is kept
// independent of the library code paths it is used to check.

#include <string>
#include <vector>

#include "regfm/fmanifold.hpp"
#include "regfm/pavlov.hpp"
#include "regfm/rng.hpp"

namespace regfm::testing {

inline Poly P(int nvars, const std::string& lit) { return Poly::parse(lit, nvars); }

inline const std::vector<std::string>& thirteen_specs() {
    static const std::vector<std::string> k = {"2",   "3",   "2,1",   "4",     "3,1",
                                               "2,2", "2,1,1", "5",   "4,1",   "3,2",
                                               "3,1,1", "2,2,1", "2,1,1,1"};
    return k;
}

// Hand-written transcription of the printed closed forms for a single
// Jordan block of size m <= 5, written in the global coordinate ring.
inline Poly golden_block_v(int m, const std::vector<Poly>& F, int n, int off) {
    auto emb = [&](const Poly& f) { return f.embed(n, {off}); };
    auto d = [](const Poly& f) { return f.diff(0); };
    auto v = [&](int rel) { return Poly::variable(n, off + rel); };
    const Rational half(1, 2), sixth(1, 6), tw4(1, 24);
    switch (m) {
        case 1:
            return emb(F[0]);
        case 2:
            return emb(F[0]) * v(1) + emb(F[1]);
        case 3:
            return emb(F[0]) * v(2) + half * emb(d(F[0])) * v(1) * v(1) + emb(F[1]) * v(1) +
                   emb(F[2]);
        case 4:
            return (emb(d(F[0])) * v(1) + emb(F[1])) * v(2) + emb(F[0]) * v(3) +
                   sixth * emb(d(d(F[0]))) * v(1) * v(1) * v(1) +
                   half * emb(d(F[1])) * v(1) * v(1) + emb(F[2]) * v(1) + emb(F[3]);
        case 5:
            return (emb(d(F[0])) * v(1) + emb(F[1])) * v(3) + emb(F[0]) * v(4) +
                   half * emb(d(F[0])) * v(2) * v(2) +
                   (half * emb(d(d(F[0]))) * v(1) * v(1) + emb(d(F[1])) * v(1) + emb(F[2])) *
                       v(2) +
                   tw4 * emb(d(d(d(F[0])))) * v(1) * v(1) * v(1) * v(1) +
                   sixth * emb(d(d(F[1]))) * v(1) * v(1) * v(1) +
                   half * emb(d(F[2])) * v(1) * v(1) + emb(F[3]) * v(1) + emb(F[4]);
        default:
            throw MathError("golden_block_v: no printed formula for m = " + std::to_string(m));
    }
}

inline Poly golden_v(const JordanSpec& spec, const FunctionFamily& fam) {
    Poly V = Poly::zero(spec.n());
    for (int a = 0; a < spec.blocks(); ++a)
        V += golden_block_v(spec.sizes[a], fam.F[a], spec.n(), spec.offset(a));
    return V;
}

inline FunctionFamily random_family(Rng& rng, const JordanSpec& spec, int maxdeg = 4) {
    FunctionFamily fam;
    for (int a = 0; a < spec.blocks(); ++a) {
        std::vector<Poly> fs;
        for (int i = 0; i < spec.sizes[a]; ++i) fs.push_back(random_univariate(rng, maxdeg));
        fam.F.push_back(std::move(fs));
    }
    return fam;
}

// Independent product oracle: the structure-constant triple sum.
inline VField<Poly> circ_oracle(const JordanSpec& spec, const VField<Poly>& X,
                                const VField<Poly>& Y) {
    int n = spec.n();
    VField<Poly> r;
    r.comps.assign(n, Poly::zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (structure_constant(spec, i, j, k)) r.comps[i] += X.comps[j] * Y.comps[k];
    return r;
}

// All ordered block profiles summing to n.
inline std::vector<JordanSpec> compositions(int n) {
    std::vector<JordanSpec> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            out.push_back(JordanSpec(cur));
            return;
        }
        for (int m = 1; m <= left; ++m) {
            cur.push_back(m);
            rec(left - m);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

// Exact polynomial solution of the classical Gibbons-Tsarev system, n = 2.
struct ExactGT2 {
    std::vector<Poly> mu;
    Poly V;
};
inline ExactGT2 exact_gt2() {
    ExactGT2 s;
    s.mu = {P(2, "3/4*r1 + 1/4*r2"), P(2, "1/4*r1 + 3/4*r2")};
    s.V = P(2, "1/16*r1^2 - 1/8*r1*r2 + 1/16*r2^2");
    return s;
}

}  // namespace regfm::testing
