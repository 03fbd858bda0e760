#pragma once

#include <cstdint>

#include "regfm/poly.hpp"
#include "regfm/vfield.hpp"

namespace regfm {

// splitmix64: identical streams on every platform for a given seed, which
// keeps seeded reports byte-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + (int)(next() % (std::uint64_t)(hi - lo + 1)); }
    bool chance(int num, int den) { return range(1, den) <= num; }
    Rational rational(int pmax = 9, int qmax = 4) {
        Rational r(range(-pmax, pmax), range(1, qmax));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(int pmax = 9, int qmax = 4) {
        for (;;) {
            Rational r = rational(pmax, qmax);
            if (r != 0) return r;
        }
    }

private:
    std::uint64_t s_;
};

inline Poly random_poly(Rng& rng, int nvars, int maxdeg, int nterms) {
    Poly p(nvars);
    for (int t = 0; t < nterms; ++t) {
        Monomial m;
        int deg = rng.range(0, maxdeg);
        for (int d = 0; d < deg; ++d) {
            int v = rng.range(0, nvars - 1);
            bool merged = false;
            for (auto& [mv, me] : m.factors)
                if (mv == v) {
                    ++me;
                    merged = true;
                }
            if (!merged) m.factors.emplace_back(v, 1);
        }
        std::sort(m.factors.begin(), m.factors.end());
        p.add_term(m, rng.rational());
    }
    return p;
}

// Univariate polynomial in one variable, nonzero unless maxdeg < 0.
inline Poly random_univariate(Rng& rng, int maxdeg) {
    Poly p(1);
    for (int d = 0; d <= maxdeg; ++d)
        p.add_term(d == 0 ? Monomial::one() : Monomial::var(0, d), rng.rational());
    if (p.is_zero()) p = Poly::constant(1, rng.nonzero_rational());
    return p;
}

inline VField<Poly> random_vfield(Rng& rng, int n, int maxdeg, int nterms) {
    VField<Poly> v;
    v.comps.reserve(n);
    for (int i = 0; i < n; ++i) v.comps.push_back(random_poly(rng, n, maxdeg, nterms));
    return v;
}

inline std::vector<Rational> random_point(Rng& rng, int n, int pmax = 5, int qmax = 3) {
    std::vector<Rational> pt;
    pt.reserve(n);
    for (int i = 0; i < n; ++i) pt.push_back(rng.rational(pmax, qmax));
    return pt;
}

}  // namespace regfm
