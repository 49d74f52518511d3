#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "error.hpp"

namespace stabclass {

// Exact arithmetic lives on boost::multiprecision value types.  cpp_rational
// keeps the canonical form this library relies on everywhere: numerator and
// denominator always coprime, denominator always positive.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// Least non-negative residue, also for negative x.
inline Int mod_reduce(const Int& x, const Int& n) {
    Int r = x % n;
    if (r < 0) r += n;
    return r;
}

inline Int pow_int(Int base, unsigned long exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

/// Parse a decimal integer (optional leading '-'), rejecting anything else.
inline Int parse_int(const std::string& s) {
    if (s.empty()) fail("invalid-argument", "empty integer literal");
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) fail("invalid-argument", "sign without digits: '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            fail("invalid-argument", "not a decimal integer: '" + s + "'");
    return Int(s);
}

inline std::string to_string(const Int& x) { return x.str(); }

} // namespace stabclass
