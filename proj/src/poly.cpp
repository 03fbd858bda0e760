#include "regfm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace regfm {

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    r.factors.reserve(factors.size() + o.factors.size());
    auto a = factors.begin(), b = o.factors.begin();
    while (a != factors.end() && b != o.factors.end()) {
        if (a->first < b->first)
            r.factors.push_back(*a++);
        else if (b->first < a->first)
            r.factors.push_back(*b++);
        else {
            r.factors.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    r.factors.insert(r.factors.end(), a, factors.end());
    r.factors.insert(r.factors.end(), b, o.factors.end());
    return r;
}

Monomial Monomial::divide_var(int var) const {
    Monomial r = *this;
    for (auto it = r.factors.begin(); it != r.factors.end(); ++it) {
        if (it->first == var) {
            if (--it->second == 0) r.factors.erase(it);
            return r;
        }
    }
    throw MathError("divide_var: variable not present in monomial");
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Lex on the dense exponent vector, r1 major. Walk both sparse lists.
    auto ia = a.factors.begin(), ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        int va = ia != a.factors.end() ? ia->first : INT32_MAX;
        int vb = ib != b.factors.end() ? ib->first : INT32_MAX;
        if (va < vb) return false;  // a has a positive exponent earlier -> a later in lex-asc
        if (vb < va) return true;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia, ++ib;
    }
    return false;
}

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Monomial::one()] = c;
    return p;
}

Poly Poly::variable(int nvars, int var) {
    if (var < 0 || var >= nvars) throw MathError("Poly::variable: index out of range");
    Poly p(nvars);
    p.terms_[Monomial::var(var)] = 1;
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.factors.empty());
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Monomial::one());
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ != o.nvars_) throw MathError("Poly: mixed variable counts");
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ != o.nvars_) throw MathError("Poly: mixed variable counts");
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw MathError("Poly: mixed variable counts");
    Poly r(a.nvars_);
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
}

Poly operator*(const Rational& c, Poly p) {
    if (c == 0) return Poly::zero(p.nvars_);
    for (auto& [m, v] : p.terms_) v *= c;
    return p;
}

Poly Poly::diff(int var) const {
    if (var < 0 || var >= nvars_) throw MathError("Poly::diff: index out of range");
    Poly r(nvars_);
    for (auto& [m, c] : terms_) {
        int e = m.exponent(var);
        if (e == 0) continue;
        r.add_term(m.divide_var(var), c * e);
    }
    return r;
}

Poly Poly::antiderivative(int var) const {
    if (var < 0 || var >= nvars_) throw MathError("Poly::antiderivative: index out of range");
    Poly r(nvars_);
    for (auto& [m, c] : terms_) {
        int e = m.exponent(var);
        r.add_term(m.times(Monomial::var(var)), c / (e + 1));
    }
    return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    if ((int)point.size() != nvars_) throw MathError("Poly::eval: wrong point dimension");
    Rational acc = 0;
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [v, e] : m.factors)
            for (int k = 0; k < e; ++k) t *= point[v];
        acc += t;
    }
    return acc;
}

Poly Poly::eval_partial(const std::vector<std::pair<int, Rational>>& vals) const {
    Poly r(nvars_);
    for (auto& [m, c] : terms_) {
        Rational coef = c;
        Monomial rest;
        for (auto& [v, e] : m.factors) {
            const Rational* val = nullptr;
            for (auto& [sv, sval] : vals)
                if (sv == v) val = &sval;
            if (val) {
                for (int k = 0; k < e; ++k) coef *= *val;
            } else {
                rest.factors.emplace_back(v, e);
            }
        }
        r.add_term(rest, coef);
    }
    return r;
}

Poly Poly::shift(const std::vector<Rational>& delta) const {
    if ((int)delta.size() != nvars_) throw MathError("Poly::shift: wrong delta dimension");
    Poly r = *this;
    for (int v = 0; v < nvars_; ++v) {
        if (delta[v] == 0) continue;
        Poly target = Poly::variable(nvars_, v) + Poly::constant(nvars_, delta[v]);
        r = r.substitute(v, target);
    }
    return r;
}

Poly Poly::substitute(int var, const Poly& q) const {
    if (q.nvars() != nvars_) throw MathError("Poly::substitute: mixed variable counts");
    // Collect by exponent of var, then Horner in q.
    int dmax = degree_in(var);
    std::vector<Poly> by_exp(dmax + 1, Poly::zero(nvars_));
    for (auto& [m, c] : terms_) {
        int e = m.exponent(var);
        Monomial rest;
        for (auto& [v, ee] : m.factors)
            if (v != var) rest.factors.emplace_back(v, ee);
        by_exp[e].add_term(rest, c);
    }
    Poly r = by_exp[dmax];
    for (int e = dmax - 1; e >= 0; --e) r = r * q + by_exp[e];
    return r;
}

Poly Poly::truncate(int max_total_degree) const {
    Poly r(nvars_);
    for (auto& [m, c] : terms_)
        if (m.degree() <= max_total_degree) r.terms_[m] = c;
    return r;
}

Poly Poly::embed(int new_nvars, const std::vector<int>& var_map) const {
    Poly r(new_nvars);
    for (auto& [m, c] : terms_) {
        Monomial t;
        for (auto& [v, e] : m.factors) {
            if (v >= (int)var_map.size() || var_map[v] < 0 || var_map[v] >= new_nvars)
                throw MathError("Poly::embed: variable map out of range");
            t.factors.emplace_back(var_map[v], e);
        }
        std::sort(t.factors.begin(), t.factors.end());
        r.add_term(t, c);
    }
    return r;
}

Rational Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool need_coeff = (a != 1) || m.factors.empty();
        if (need_coeff) os << a.get_str();
        bool need_star = need_coeff;
        for (auto& [v, e] : m.factors) {
            if (need_star) os << "*";
            os << "r" << (v + 1);
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t i = 0;
    int nvars;

    explicit PolyParser(const std::string& text, int nv) : s(text), nvars(nv) {}

    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ConfigError("poly parse error at offset " + std::to_string(i) + ": " + what);
    }

    Rational parse_number() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected digit");
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i < s.size() && s[i] == '/') {
            ++i;
            if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected denominator");
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        }
        return parse_rational(s.substr(start, i - start));
    }

    int parse_var() {
        // at s[i] == 'r'
        ++i;
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected variable index");
        int v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        if (v < 1 || v > nvars) fail("variable r" + std::to_string(v) + " out of range");
        return v - 1;
    }

    // term := factor {'*' factor}; factor := rational | var ['^' int]
    void parse_factor(Rational& coef, Monomial& m) {
        skip_ws();
        if (i < s.size() && s[i] == 'r') {
            int v = parse_var();
            int e = 1;
            if (eat('^')) {
                Rational ex = parse_number();
                if (ex.get_den() != 1 || ex < 0) fail("bad exponent");
                e = (int)ex.get_num().get_si();
            }
            bool merged = false;
            for (auto& [mv, me] : m.factors)
                if (mv == v) {
                    me += e;
                    merged = true;
                }
            if (!merged) m.factors.emplace_back(v, e);
        } else if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            coef *= parse_number();
        } else {
            fail("expected factor");
        }
    }

    Poly parse_term() {
        Rational coef = 1;
        Monomial m;
        parse_factor(coef, m);
        while (eat('*')) parse_factor(coef, m);
        std::sort(m.factors.begin(), m.factors.end());
        Poly p(nvars);
        p.add_term(m, coef);
        return p;
    }

    Poly parse_sum() {
        skip_ws();
        Poly acc(nvars);
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        acc += Rational(sign) * parse_term();
        for (;;) {
            skip_ws();
            if (i >= s.size()) break;
            if (eat('+'))
                acc += parse_term();
            else if (eat('-'))
                acc -= parse_term();
            else
                fail("expected '+' or '-'");
        }
        return acc;
    }
};

}  // namespace

Poly Poly::parse(const std::string& text, int nvars) {
    PolyParser p(text, nvars);
    p.skip_ws();
    if (p.i >= text.size()) throw ConfigError("empty poly literal");
    return p.parse_sum();
}

}  // namespace regfm
