#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "regfm/poly.hpp"

namespace regfm {

// Formal jet symbols: d_K mu^i and d_K V for derivative multi-indices K of
// total order <= cap. Used to verify identities with fully generic data.
enum class JetKind { MuComp, VFun };

struct JetKey {
    JetKind kind;
    int comp;            // mu component (0-based flat); -1 for V
    std::vector<int> K;  // derivative multi-index, length nvars

    auto tie() const { return std::tuple<int, int, const std::vector<int>&>((int)kind, comp, K); }
    bool operator<(const JetKey& o) const { return tie() < o.tie(); }
    bool operator==(const JetKey& o) const { return tie() == o.tie(); }
};

// Immutable registry of every admissible jet symbol for a fixed number of
// coordinates; symbol ids double as variable indices of the carrier Poly.
class JetContext {
public:
    JetContext(int nvars, int cap = 2);

    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    int nsymbols() const { return (int)symbols_.size(); }

    int mu_id(int comp, const std::vector<int>& K) const;
    int v_id(const std::vector<int>& K) const;
    // Symbol for the total derivative of `id` in direction `var`; throws if
    // the derivative order would exceed the cap.
    int prolong(int id, int var) const;
    const JetKey& key(int id) const { return symbols_[id]; }
    std::string name(int id) const;

private:
    int nvars_, cap_;
    std::vector<JetKey> symbols_;
    std::map<JetKey, int> index_;
};

using JetCtxPtr = std::shared_ptr<const JetContext>;

// Polynomial in jet symbols with exact rational coefficients. Symbols
// commute; diff applies the jet-prolongation rule term by term.
class JetExpr {
public:
    JetExpr() = default;
    JetExpr(JetCtxPtr ctx, Poly p) : ctx_(std::move(ctx)), p_(std::move(p)) {}

    static JetExpr zero(const JetCtxPtr& ctx) { return {ctx, Poly::zero(ctx->nsymbols())}; }
    static JetExpr constant(const JetCtxPtr& ctx, const Rational& c) {
        return {ctx, Poly::constant(ctx->nsymbols(), c)};
    }
    static JetExpr symbol(const JetCtxPtr& ctx, int id) {
        return {ctx, Poly::variable(ctx->nsymbols(), id)};
    }
    static JetExpr mu(const JetCtxPtr& ctx, int comp, const std::vector<int>& K) {
        return symbol(ctx, ctx->mu_id(comp, K));
    }
    static JetExpr v(const JetCtxPtr& ctx, const std::vector<int>& K) {
        return symbol(ctx, ctx->v_id(K));
    }

    const JetCtxPtr& ctx() const { return ctx_; }
    const Poly& carrier() const { return p_; }
    bool is_zero() const { return p_.is_zero(); }

    JetExpr operator-() const { return {ctx_, -p_}; }
    friend JetExpr operator+(const JetExpr& a, const JetExpr& b) { return {a.ctx_, a.p_ + b.p_}; }
    friend JetExpr operator-(const JetExpr& a, const JetExpr& b) { return {a.ctx_, a.p_ - b.p_}; }
    friend JetExpr operator*(const JetExpr& a, const JetExpr& b) { return {a.ctx_, a.p_ * b.p_}; }
    friend JetExpr operator*(const Rational& c, const JetExpr& a) { return {a.ctx_, c * a.p_}; }
    friend JetExpr operator*(const JetExpr& a, const Rational& c) { return c * a; }
    friend bool operator==(const JetExpr& a, const JetExpr& b) { return a.p_ == b.p_; }

    // Total derivative with respect to coordinate `var`.
    JetExpr diff(int var) const;
    // Substitute zero for every symbol matching the predicate.
    JetExpr kill(const std::function<bool(const JetKey&)>& pred) const;
    // Instantiate with concrete polynomial data: mu components and V over the
    // coordinate ring; each symbol becomes the corresponding exact partial.
    Poly instantiate(const std::vector<Poly>& mu, const Poly& V) const;

    std::string to_string() const;

private:
    JetCtxPtr ctx_;
    Poly p_;
};

inline JetExpr zero_like(const JetExpr& e) { return JetExpr::zero(e.ctx()); }
inline JetExpr constant_like(const JetExpr& e, const Rational& c) {
    return JetExpr::constant(e.ctx(), c);
}
inline bool is_zero(const JetExpr& e) { return e.is_zero(); }

}  // namespace regfm
