#pragma once

#include <vector>

#include "regfm/errors.hpp"

namespace regfm {

// Vector field with scalar-ring components, indexed by 0-based flat coordinate.
template <class S>
struct VField {
    std::vector<S> comps;

    VField() = default;
    explicit VField(std::vector<S> c) : comps(std::move(c)) {}

    int n() const { return (int)comps.size(); }
    const S& operator[](int i) const { return comps[i]; }
    S& operator[](int i) { return comps[i]; }

    bool is_zero() const {
        for (const auto& c : comps)
            if (!c.is_zero()) return false;
        return true;
    }

    friend VField operator+(const VField& a, const VField& b) {
        VField r = a;
        for (int i = 0; i < a.n(); ++i) r.comps[i] = a.comps[i] + b.comps[i];
        return r;
    }
    friend VField operator-(const VField& a, const VField& b) {
        VField r = a;
        for (int i = 0; i < a.n(); ++i) r.comps[i] = a.comps[i] - b.comps[i];
        return r;
    }
    friend bool operator==(const VField& a, const VField& b) { return a.comps == b.comps; }
};

// Square matrix of scalar-ring entries, L^i_j = at(i, j) with i the row
// (upper) index. blockToeplitz marks operators produced by mult_operator.
template <class S>
struct OpMatrix {
    int n = 0;
    std::vector<S> a;
    bool block_toeplitz = false;

    OpMatrix() = default;
    OpMatrix(int n_, const S& fill) : n(n_), a(n_ * n_, fill) {}

    const S& at(int i, int j) const { return a[i * n + j]; }
    S& at(int i, int j) { return a[i * n + j]; }

    friend OpMatrix operator+(const OpMatrix& x, const OpMatrix& y) {
        OpMatrix r = x;
        for (int k = 0; k < x.n * x.n; ++k) r.a[k] = x.a[k] + y.a[k];
        r.block_toeplitz = false;
        return r;
    }
    friend OpMatrix operator-(const OpMatrix& x, const OpMatrix& y) {
        OpMatrix r = x;
        for (int k = 0; k < x.n * x.n; ++k) r.a[k] = x.a[k] - y.a[k];
        r.block_toeplitz = false;
        return r;
    }
    friend OpMatrix operator*(const OpMatrix& x, const OpMatrix& y) {
        if (x.n != y.n) throw MathError("OpMatrix: size mismatch");
        OpMatrix r(x.n, zero_like(x.a[0]));
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) {
                S acc = zero_like(x.a[0]);
                for (int h = 0; h < x.n; ++h) acc = acc + x.at(i, h) * y.at(h, j);
                r.at(i, j) = acc;
            }
        return r;
    }
    friend bool operator==(const OpMatrix& x, const OpMatrix& y) {
        return x.n == y.n && x.a == y.a;
    }

    VField<S> apply(const VField<S>& v) const {
        if (v.n() != n) throw MathError("OpMatrix: size mismatch");
        VField<S> r;
        r.comps.reserve(n);
        for (int i = 0; i < n; ++i) {
            S acc = zero_like(a[0]);
            for (int j = 0; j < n; ++j) acc = acc + at(i, j) * v.comps[j];
            r.comps.push_back(acc);
        }
        return r;
    }

    bool is_zero() const {
        for (const auto& e : a)
            if (!e.is_zero()) return false;
        return true;
    }
};

// [X, Y]^i = X^h d_h Y^i - Y^h d_h X^i.
template <class S>
VField<S> lie_bracket(const VField<S>& X, const VField<S>& Y) {
    int n = X.n();
    VField<S> r;
    r.comps.reserve(n);
    for (int i = 0; i < n; ++i) {
        S acc = zero_like(X.comps[0]);
        for (int h = 0; h < n; ++h)
            acc = acc + X.comps[h] * Y.comps[i].diff(h) - Y.comps[h] * X.comps[i].diff(h);
        r.comps.push_back(acc);
    }
    return r;
}

}  // namespace regfm
