#pragma once

#include "fopt/enclosure.hpp"

namespace fopt {

// c0 = min over x != 0 of sin(x)/x, attained at the root x* of x cos x - sin x
// in (pi, 2 pi); c0 = cos(x*) ~ -0.21723.
struct C0Constant {
    Enclosure critical_point;
    Enclosure value;
};

// Bisection with certified interval sign evaluations; the root bracket keeps the
// derivative sign change of sin(x)/x across x*. precision_bits >= 64.
C0Constant compute_c0(unsigned precision_bits = 128);

// Global minimum of D_n(x) = sin((n+1/2)x) / sin(x/2); m_n/n approaches 2 c0.
struct DirichletKernelMin {
    long n;
    Enclosure m_n;
    Enclosure ratio;  // m_n / n
};

// Certified search over one period: the kernel is even and 2 pi periodic, and
// symmetric about pi, so (0, pi] suffices. The first positive arch is positive
// by inspection of the numerator sign, the first negative arch is minimized by
// branch and bound with interval quotients, and the remainder is caught by the
// envelope D_n >= -1/sin(x/2).
DirichletKernelMin dirichlet_min(long n);

}  // namespace fopt
