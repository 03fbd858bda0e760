#pragma once

#include <vector>

#include "regfm/vfield.hpp"

namespace regfm {

template <class S>
struct Form1 {
    std::vector<S> comp;

    Form1() = default;
    explicit Form1(std::vector<S> c) : comp(std::move(c)) {}
    int n() const { return (int)comp.size(); }
    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }
    friend Form1 operator+(const Form1& a, const Form1& b) {
        Form1 r = a;
        for (int i = 0; i < a.n(); ++i) r.comp[i] = a.comp[i] + b.comp[i];
        return r;
    }
    friend Form1 operator-(const Form1& a, const Form1& b) {
        Form1 r = a;
        for (int i = 0; i < a.n(); ++i) r.comp[i] = a.comp[i] - b.comp[i];
        return r;
    }
    friend bool operator==(const Form1& a, const Form1& b) { return a.comp == b.comp; }
};

// Antisymmetric 2-form, components stored for j < k.
template <class S>
struct Form2 {
    int nn = 0;
    std::vector<S> upper;

    Form2() = default;
    Form2(int n, const S& fill) : nn(n), upper(n * (n - 1) / 2, fill) {}

    int n() const { return nn; }
    static int pair_index(int n, int j, int k) { return j * (2 * n - j - 1) / 2 + (k - j - 1); }
    const S& at(int j, int k) const { return upper[pair_index(nn, j, k)]; }
    S& at(int j, int k) { return upper[pair_index(nn, j, k)]; }
    S get(int j, int k) const {
        if (j == k) return zero_like(upper.empty() ? S() : upper[0]);
        return j < k ? at(j, k) : -at(k, j);
    }
    bool is_zero() const {
        for (const auto& c : upper)
            if (!c.is_zero()) return false;
        return true;
    }
    friend Form2 operator+(const Form2& a, const Form2& b) {
        Form2 r = a;
        for (std::size_t i = 0; i < a.upper.size(); ++i) r.upper[i] = a.upper[i] + b.upper[i];
        return r;
    }
    friend Form2 operator-(const Form2& a, const Form2& b) {
        Form2 r = a;
        for (std::size_t i = 0; i < a.upper.size(); ++i) r.upper[i] = a.upper[i] - b.upper[i];
        return r;
    }
    friend bool operator==(const Form2& a, const Form2& b) {
        return a.nn == b.nn && a.upper == b.upper;
    }
};

// Vector-valued antisymmetric bilinear data N^i_{jk} = -N^i_{kj}, stored for j < k.
template <class S>
struct Torsion {
    int nn = 0;
    std::vector<S> t;  // [i * npairs + pair(j,k)]

    Torsion() = default;
    Torsion(int n, const S& fill) : nn(n), t(n * (n * (n - 1) / 2), fill) {}

    int n() const { return nn; }
    int npairs() const { return nn * (nn - 1) / 2; }
    const S& at(int i, int j, int k) const {
        return t[i * npairs() + Form2<S>::pair_index(nn, j, k)];
    }
    S& at(int i, int j, int k) { return t[i * npairs() + Form2<S>::pair_index(nn, j, k)]; }
    S get(int i, int j, int k) const {
        if (j == k) return zero_like(t[0]);
        return j < k ? at(i, j, k) : -at(i, k, j);
    }
    bool is_zero() const {
        for (const auto& c : t)
            if (!c.is_zero()) return false;
        return true;
    }
};

}  // namespace regfm
