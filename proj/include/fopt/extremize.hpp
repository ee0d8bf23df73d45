#pragma once

#include <vector>

#include "fopt/enclosure.hpp"
#include "fopt/poly.hpp"

namespace fopt {

// Isolating interval for one real root, with exact rational endpoints.
// lo == hi marks an exactly-known rational root.
struct RootBox {
    Rational lo, hi;
};

// Root layout of a polynomial on [lo, hi]: disjoint root boxes in increasing order
// plus the exact sign of the polynomial on each of the open cells between them.
// signs has size roots.size() + 1; a degenerate cell (zero length) gets sign 0.
struct SignPartition {
    std::vector<RootBox> roots;
    std::vector<int> signs;

    std::vector<Enclosure> breakpoints() const;  // rounded view of the boxes
};

// Sturm-sequence isolation of all real roots of f in [lo, hi]. Boxes are refined by
// bisection to width <= 2^-width_bits. Exact rational arithmetic throughout; signs are
// computed by evaluating f at rational sample points strictly between boxes.
// Throws IdenticallyZeroError when f is the zero polynomial.
SignPartition isolate_roots(const PolyQ& f, const Rational& lo, const Rational& hi,
                            unsigned width_bits = 60);

// Certified range of the minimum of |f| over [lo, hi]. If f has a root in the interval
// the minimum is exactly zero and [0,0] is returned. Otherwise candidates are the
// endpoints (exact) and the critical points of f (interval-evaluated over their boxes).
RationalInterval certified_min_abs(const PolyQ& f, const Rational& lo, const Rational& hi,
                                   unsigned width_bits = 60);

// Certified range of the maximum of sum_i |parts[i]| over [lo, hi]. Zero parts are
// dropped; throws IdenticallyZeroError when every part is zero.
RationalInterval certified_max_abs_sum(const std::vector<PolyQ>& parts, const Rational& lo,
                                       const Rational& hi, unsigned width_bits = 60);

// min over [0,1] of |s| with s(a) = q(a) + q(1-a); [0,0] when s changes sign.
Enclosure min_abs_symmetric_sum(const Autocorrelation& ac);

// max over [0,1] of |q(a)| + |q(1-a)|.
Enclosure max_abs_pair_sum(const Autocorrelation& ac);

// max over [0,1] of sum_{n=0..m} |qext(n-a)| where qext is q evenly extended to [-1,1]
// and zero beyond. Terms with n >= 2 vanish identically there, so for m >= 1 this equals
// max_abs_pair_sum; m = 0 gives max |q|.
Enclosure truncated_shift_sum_max(const Autocorrelation& ac, int m);

}  // namespace fopt
