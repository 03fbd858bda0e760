#pragma once

#include <string>
#include <vector>

#include "regfm/poly.hpp"

namespace regfm {

// Multivariate Taylor expansion at a rational base point, truncated by total
// degree. Internally a Poly in the shifted variables y = r - base; `order`
// tracks through which total degree the stored terms are reliable, so a
// derivative of an order-N series is an order-(N-1) series.
class TruncSeries {
public:
    TruncSeries() : order_(-1) {}
    TruncSeries(std::vector<Rational> base, int order, Poly shifted);

    static TruncSeries from_poly(const Poly& p, const std::vector<Rational>& base, int order);
    static TruncSeries zero(const std::vector<Rational>& base, int order);
    static TruncSeries constant(const std::vector<Rational>& base, int order, const Rational& c);

    int nvars() const { return (int)base_.size(); }
    int order() const { return order_; }
    const std::vector<Rational>& base() const { return base_; }
    const Poly& shifted_poly() const { return p_; }

    bool is_zero() const { return p_.is_zero(); }
    Rational value_at_base() const { return p_.constant_term(); }
    Rational coeff(const Monomial& m) const { return p_.coeff(m); }

    TruncSeries operator-() const { return TruncSeries(base_, order_, -p_); }
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const Rational& c, const TruncSeries& s) {
        return TruncSeries(s.base_, s.order_, c * s.p_);
    }
    friend TruncSeries operator*(const TruncSeries& s, const Rational& c) { return c * s; }

    // Equality of stored data (same base, order, terms). For comparisons "to
    // truncation order" use equal_to_order.
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.base_ == b.base_ && a.order_ == b.order_ && a.p_ == b.p_;
    }
    bool equal_to_order(const TruncSeries& o, int ord) const;

    TruncSeries diff(int var) const;
    TruncSeries antiderivative(int var) const;
    // Multiplicative inverse; requires a nonzero value at base.
    TruncSeries inverse() const;
    TruncSeries truncate_to(int order) const;

    // Exact evaluation of the stored truncation at a rational point.
    Rational eval_truncated(const std::vector<Rational>& point) const;

    std::string to_string() const { return p_.to_string(); }

private:
    std::vector<Rational> base_;
    int order_;
    Poly p_;

    void check_compatible(const TruncSeries& o) const;
};

inline TruncSeries zero_like(const TruncSeries& s) {
    return TruncSeries::zero(s.base(), s.order());
}
inline TruncSeries constant_like(const TruncSeries& s, const Rational& c) {
    return TruncSeries::constant(s.base(), s.order(), c);
}
inline bool is_zero(const TruncSeries& s) { return s.is_zero(); }

}  // namespace regfm
