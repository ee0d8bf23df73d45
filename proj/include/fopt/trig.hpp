#pragma once

#include "fopt/enclosure.hpp"
#include "fopt/rational.hpp"

namespace fopt {

// Rational enclosure of pi, accurate to ~50 decimal digits. Used only to locate
// trig critical points; the width never enters a certified value directly.
const RationalInterval& pi_bounds();

// Certified sine/cosine at a rational point, |x| <= 8. Exact-rational Taylor partial
// sum with an alternating-tail remainder bound; the argument is dyadically rounded
// first and the rounding is absorbed via the Lipschitz-1 bound. tail_bits controls
// the remainder target (2^-tail_bits).
RationalInterval sin_at(const Rational& x, unsigned tail_bits);
RationalInterval cos_at(const Rational& x, unsigned tail_bits);

// Range of sine over [x.lo, x.hi] with 0 <= x.lo, x.hi <= 2*pi + 1/4. Detects interior
// critical points through pi_bounds(); widening at an ambiguous boundary only ever
// adds the true extremum value, so the result stays a valid enclosure.
RationalInterval sin_over(const RationalInterval& x, unsigned tail_bits);
RationalInterval cos_over(const RationalInterval& x, unsigned tail_bits);

// Certified cube root of r >= 0 by exact bisection to width 2^-bits.
RationalInterval cbrt_of(const Rational& r, unsigned bits);

}  // namespace fopt
