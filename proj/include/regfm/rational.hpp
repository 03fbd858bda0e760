#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "regfm/errors.hpp"

namespace regfm {

// Exact rational scalar. GMP keeps gcd(|num|, den) = 1 and den > 0 after
// arithmetic; construction from text goes through parse_rational below so
// non-canonical inputs like "3/6" are reduced on entry.
using Rational = mpq_class;

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ConfigError("bad rational literal: '" + s + "'");
    if (q.get_den() == 0) throw ConfigError("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_str();  // "p" or "p/q"
}

inline std::vector<Rational> rational_point(const std::vector<std::string>& coords) {
    std::vector<Rational> p;
    p.reserve(coords.size());
    for (const auto& c : coords) p.push_back(parse_rational(c));
    return p;
}

}  // namespace regfm
