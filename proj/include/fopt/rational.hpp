#pragma once

#include <gmpxx.h>

#include <string>

#include "fopt/errors.hpp"

namespace fopt {

// Exact rational scalar. mpq_class keeps values canonical (gcd 1, positive denominator).
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign_of(const Rational& r) { return sgn(r); }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Parses "n", "n/d", or a plain decimal such as "-1.25" into an exact rational.
Rational parse_rational(const std::string& text);

// Canonical "n" or "n/d" form.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// floor(r * 2^bits) / 2^bits and the matching ceiling; exact dyadic rounding.
Rational dyadic_floor(const Rational& r, unsigned bits);
Rational dyadic_ceil(const Rational& r, unsigned bits);

Rational floor_rational(const Rational& r);

// Fractional part r - floor(r), in [0, 1).
Rational fractional_part(const Rational& r);

// Largest best rational approximation of x with denominator <= max_den,
// via continued-fraction convergents.
Rational rationalize(double x, unsigned long max_den);

}  // namespace fopt
