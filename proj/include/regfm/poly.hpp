#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "regfm/rational.hpp"

namespace regfm {

// Sparse monomial: factors (variable, exponent) sorted by variable index,
// exponents strictly positive. The empty list is the constant monomial 1.
struct Monomial {
    std::vector<std::pair<int, int>> factors;

    int degree() const {
        int d = 0;
        for (auto& [v, e] : factors) d += e;
        return d;
    }
    int exponent(int var) const {
        for (auto& [v, e] : factors)
            if (v == var) return e;
        return 0;
    }
    bool operator==(const Monomial& o) const { return factors == o.factors; }

    static Monomial one() { return {}; }
    static Monomial var(int v, int e = 1) { return Monomial{{{v, e}}}; }
    Monomial times(const Monomial& o) const;
    // Divide by var^1; exponent of var must be >= 1.
    Monomial divide_var(int var) const;
};

// Graded-lexicographic order: total degree first, then lex on the dense
// exponent vector with r1 major. Used both as the term-map order and as the
// canonical printing order.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over exact rationals. No zero coefficients
// are stored; equality is term-map equality.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int var);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(int var) const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& c, Poly p);
    friend Poly operator*(Poly p, const Rational& c) { return c * std::move(p); }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly diff(int var) const;
    Poly antiderivative(int var) const;
    Rational eval(const std::vector<Rational>& point) const;
    // Substitute a subset of variables by rational values; remaining
    // variables keep their indices (nvars unchanged).
    Poly eval_partial(const std::vector<std::pair<int, Rational>>& vals) const;
    // r_i -> r_i + delta_i for every i.
    Poly shift(const std::vector<Rational>& delta) const;
    // Substitute var by q(other variables of the same ring).
    Poly substitute(int var, const Poly& q) const;
    Poly truncate(int max_total_degree) const;
    // Reinterpret over a wider ring, optionally relocating variable 0..k
    // to given target indices (used to embed univariate F(r) blocks).
    Poly embed(int new_nvars, const std::vector<int>& var_map) const;

    Rational coeff(const Monomial& m) const;

    std::string to_string() const;
    static Poly parse(const std::string& text, int nvars);

private:
    int nvars_;
    TermMap terms_;
};

inline Poly zero_like(const Poly& p) { return Poly::zero(p.nvars()); }
inline Poly constant_like(const Poly& p, const Rational& c) {
    return Poly::constant(p.nvars(), c);
}
inline bool is_zero(const Poly& p) { return p.is_zero(); }

}  // namespace regfm
