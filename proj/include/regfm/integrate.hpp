#pragma once

#include "regfm/errors.hpp"
#include "regfm/forms.hpp"
#include "regfm/poly.hpp"
#include "regfm/series.hpp"

namespace regfm {

// Primitive of an exactly closed polynomial one-form, normalised by
// f(base) = 0. Iterated univariate antidifferentiation along coordinate axes:
//   f = sum_k [ G_k(r_1..r_k, b_{k+1}..b_n) - G_k(r_1..r_{k-1}, b_k, ..) ],
// with G_k the antiderivative of w_k in r_k.
inline Poly integrate_closed_one_form(const Form1<Poly>& w, const std::vector<Rational>& base) {
    int n = w.n();
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Poly d = w.comp[k].diff(j) - w.comp[j].diff(k);
            if (!d.is_zero()) throw NotClosedError(j, k, d.to_string());
        }
    Poly f = Poly::zero(n);
    for (int k = 0; k < n; ++k) {
        std::vector<std::pair<int, Rational>> tail;
        for (int v = k + 1; v < n; ++v) tail.emplace_back(v, base[v]);
        Poly G = w.comp[k].eval_partial(tail).antiderivative(k);
        f += G - G.eval_partial({{k, base[k]}});
    }
    for (int k = 0; k < n; ++k)
        if (!(f.diff(k) == w.comp[k]))
            throw MathError("integrate_closed_one_form: gradient check failed");
    return f;
}

// Series variant at the common base point of the components, truncation
// orders tracked through the construction; closedness is required up to the
// order the derivatives are reliable.
inline TruncSeries integrate_closed_one_form(const Form1<TruncSeries>& w) {
    int n = w.n();
    const std::vector<Rational>& base = w.comp[0].base();
    int order = w.comp[0].order();
    for (int k = 1; k < n; ++k) order = std::min(order, w.comp[k].order());
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Poly d = w.comp[k].shifted_poly().diff(j) - w.comp[j].shifted_poly().diff(k);
            d = d.truncate(order - 1);
            if (!d.is_zero()) throw NotClosedError(j, k, d.to_string());
        }
    Poly f = Poly::zero(n);
    for (int k = 0; k < n; ++k) {
        std::vector<std::pair<int, Rational>> tail;
        for (int v = k + 1; v < n; ++v) tail.emplace_back(v, 0);
        Poly G = w.comp[k].shifted_poly().truncate(order).eval_partial(tail).antiderivative(k);
        f += G - G.eval_partial({{k, Rational(0)}});
    }
    return TruncSeries(base, order + 1, f);
}

}  // namespace regfm
