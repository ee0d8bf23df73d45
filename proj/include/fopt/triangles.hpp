#pragma once

#include <optional>
#include <vector>

#include "fopt/enclosure.hpp"
#include "fopt/poly.hpp"
#include "fopt/rational.hpp"

namespace fopt {

// One triangle bump a |-> height_scale * (1 - |a - center| / half_width)_+.
struct TriangleBump {
    Rational half_width;    // delta_j > 0
    Rational height_scale;  // peak value > 0
    Rational center;        // xi_j
};

enum class ConfigSide { upper, lower };

// Superposition of triangle bumps majorizing (upper) or minorizing (lower) the
// indicator of [0, ell]. Geometry identities:
//   upper: Delta*(n-1) + 2*delta = ell
//   lower: ell = Delta*n + 2*delta1 = Delta*(n+1) + 2*delta2
struct TriangleConfig {
    std::vector<TriangleBump> bumps;
    Rational ell;
    Rational delta;  // the big-triangle half-width Delta
    ConfigSide side;
    Rational rho_sum;        // upper side: sum of rho_K over bumps
    Rational objective_sum;  // lower side: sum of (2 g_j(0) - rho), clamped at 0
};

struct ValidationReport {
    bool feasible;
    std::optional<Rational> witness;  // a violating point when infeasible
    long points_checked;
};

// rho applied to the triangle kernel of half-width delta within window Delta:
//   1 + delta^2/3          for 0 < delta <= 1
//   delta + 1/(3 delta)    for 1 < delta <= Delta
Rational rho_K(const Rational& delta, const Rational& Delta);

// Closed-form upper bound; exact rational for ell >= 1, and for 0 < ell < 1 the
// minimum against a branch containing the constant (ell^2/6)^(1/3).
Enclosure upper_bound_closed(const Rational& ell);

// Closed-form lower bound; exact rational everywhere (both branch families are
// rational in ell).
Rational lower_bound_closed(const Rational& ell);

// General-Delta bounds, exact rationals. Delta in [4/3, 2]; upper needs ell > 0,
// lower needs ell >= Delta. Branch tests and positive parts are exact sign tests.
Rational general_upper(const Rational& ell, const Rational& Delta);
Rational general_lower(const Rational& ell, const Rational& Delta);

// Branch polynomials of the general bounds in the fractional part x = {ell/Delta}.
// upper_split_correction: subtracted from the upper bound when positive (its unique
// root in (0,1) sits above 2/Delta - 1, where the second branch takes over).
// lower_tail_gain: objective gain of the smallest lower bump, included only when
// positive, which happens exactly for x > (6 - 2 sqrt 6)/Delta.
PolyQ upper_split_correction(const Rational& Delta);
PolyQ lower_tail_gain(const Rational& Delta);

// The crossover ell_1 where the first branch of the closed-form lower bound
// overtakes the second (approx 3.6092); bisection on the exact branch difference.
double lower_crossover_ell();

// Explicit feasible configuration whose rho/objective sum realizes the
// corresponding general bound (branch minimum). Lower side with ell < Delta
// degenerates to the single bump of half-width ell/2.
TriangleConfig build_config(const Rational& ell, const Rational& Delta, ConfigSide side);

// Exact feasibility check at every piecewise-linear breakpoint, with grid
// (>= 1000) equispaced sample points as redundancy. Never throws on infeasible
// input; the report carries a witness instead.
ValidationReport validate_config(const TriangleConfig& cfg, long grid);

}  // namespace fopt
