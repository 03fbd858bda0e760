#include "regfm/series.hpp"

#include <algorithm>

#include "regfm/errors.hpp"

namespace regfm {

TruncSeries::TruncSeries(std::vector<Rational> base, int order, Poly shifted)
    : base_(std::move(base)), order_(order), p_(shifted.truncate(order)) {
    if (p_.nvars() != (int)base_.size()) throw MathError("TruncSeries: dimension mismatch");
}

TruncSeries TruncSeries::from_poly(const Poly& p, const std::vector<Rational>& base, int order) {
    if (p.nvars() != (int)base.size()) throw MathError("TruncSeries: dimension mismatch");
    return TruncSeries(base, order, p.shift(base));
}

TruncSeries TruncSeries::zero(const std::vector<Rational>& base, int order) {
    return TruncSeries(base, order, Poly::zero((int)base.size()));
}

TruncSeries TruncSeries::constant(const std::vector<Rational>& base, int order, const Rational& c) {
    return TruncSeries(base, order, Poly::constant((int)base.size(), c));
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
    if (base_ != o.base_) throw MathError("TruncSeries: mixed base points");
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    return TruncSeries(a.base_, std::min(a.order_, b.order_), a.p_ + b.p_);
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    return TruncSeries(a.base_, std::min(a.order_, b.order_), a.p_ - b.p_);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    return TruncSeries(a.base_, std::min(a.order_, b.order_), a.p_ * b.p_);
}

bool TruncSeries::equal_to_order(const TruncSeries& o, int ord) const {
    check_compatible(o);
    return (p_ - o.p_).truncate(ord).is_zero();
}

TruncSeries TruncSeries::diff(int var) const {
    return TruncSeries(base_, order_ - 1, p_.diff(var));
}

TruncSeries TruncSeries::antiderivative(int var) const {
    return TruncSeries(base_, order_ + 1, p_.antiderivative(var));
}

TruncSeries TruncSeries::inverse() const {
    Rational c = value_at_base();
    if (c == 0) throw SingularPivotError("series inverse: zero value at base point");
    // 1/f = (1/c) * sum_k (-g/c)^k with g = f - c of valuation >= 1.
    Poly g = p_ - Poly::constant(p_.nvars(), c);
    Rational inv_c = Rational(1) / c;
    Poly acc = Poly::constant(p_.nvars(), 1);
    Poly pw = Poly::constant(p_.nvars(), 1);
    Poly step = (-inv_c) * g;
    for (int k = 1; k <= order_; ++k) {
        pw = (pw * step).truncate(order_);
        if (pw.is_zero()) break;
        acc += pw;
    }
    return TruncSeries(base_, order_, inv_c * acc);
}

TruncSeries TruncSeries::truncate_to(int order) const {
    return TruncSeries(base_, std::min(order, order_), p_);
}

Rational TruncSeries::eval_truncated(const std::vector<Rational>& point) const {
    if ((int)point.size() != nvars()) throw MathError("TruncSeries: wrong point dimension");
    std::vector<Rational> y(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) y[i] = point[i] - base_[i];
    return p_.eval(y);
}

}  // namespace regfm
