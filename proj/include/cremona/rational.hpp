#pragma once

#include <gmpxx.h>
#include <string>

#include "cremona/errors.hpp"

namespace cremona {

// Exact arbitrary-precision rationals. mpq_class keeps the canonical form
// gcd(num, den) = 1, den > 0 as long as values are built through the
// helpers below (raw two-argument constructors do not canonicalize).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", "p/q".
inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw Error("unparsable rational: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

} // namespace cremona
