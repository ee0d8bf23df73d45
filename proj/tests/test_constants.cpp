#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fopt/constants.hpp"
#include "fopt/errors.hpp"
#include "fopt/trig.hpp"

using fopt::C0Constant;
using fopt::DirichletKernelMin;
using fopt::Rational;
using fopt::RationalInterval;
using fopt::rat;

namespace {

double dirichlet_kernel(long n, double x) {
    return std::sin((n + 0.5) * x) / std::sin(0.5 * x);
}

}  // namespace

TEST_CASE("interval trig building blocks") {
    const RationalInterval& pi = fopt::pi_bounds();
    CHECK(pi.lo > rat(31415926, 10000000));
    CHECK(pi.hi < rat(31415927, 10000000));

    RationalInterval s = fopt::sin_at(rat(1), 60);
    CHECK(fopt::to_double(s.lo) <= std::sin(1.0));
    CHECK(fopt::to_double(s.hi) >= std::sin(1.0));
    CHECK(fopt::to_double(s.width()) <= 1e-15);

    RationalInterval c = fopt::cos_at(rat(3, 2), 60);
    CHECK(fopt::to_double(c.lo) <= std::cos(1.5));
    CHECK(fopt::to_double(c.hi) >= std::cos(1.5));

    // Range enclosures must cover the interior extremum, not just endpoints.
    RationalInterval hump = fopt::sin_over({rat(1), rat(2)}, 60);
    CHECK(fopt::to_double(hump.hi) >= 1.0);
    CHECK(fopt::to_double(hump.lo) <= std::sin(1.0));

    RationalInterval dip = fopt::cos_over({rat(3), rat(7, 2)}, 60);
    CHECK(fopt::to_double(dip.lo) <= -1.0);
    CHECK(fopt::to_double(dip.hi) >= std::cos(3.5));

    CHECK_THROWS_AS(fopt::sin_over({rat(-1), rat(1)}, 60), fopt::OutOfRangeError);
    CHECK_THROWS_AS(fopt::cos_over({rat(0), rat(7)}, 60), fopt::OutOfRangeError);

    RationalInterval cube = fopt::cbrt_of(rat(27), 60);
    CHECK(cube.lo <= rat(3));
    CHECK(cube.hi >= rat(3));
    CHECK(cube.width() <= rat(1, 1L << 50));
}

TEST_CASE("kernel-minimum constant enclosure") {
    C0Constant c0 = fopt::compute_c0(128);
    CHECK(c0.value.width() <= 1e-20);
    CHECK(std::fabs(c0.value.mid() - (-0.2172336282)) <= 5e-11);
    CHECK(std::fabs(c0.critical_point.mid() - 4.4934) <= 1e-3);
    CHECK(c0.critical_point.width() <= 1e-20);

    // Stationarity identities at the critical point, cross-checked in doubles.
    double xs = c0.critical_point.mid();
    CHECK(std::fabs(std::sin(xs) / xs - c0.value.mid()) <= 1e-12);
    CHECK(std::fabs(std::cos(xs) - c0.value.mid()) <= 1e-12);

    C0Constant rough = fopt::compute_c0(64);
    CHECK(rough.value.width() >= c0.value.width());
    CHECK(rough.value.lo_double() <= c0.value.hi_double());
    CHECK(c0.value.lo_double() <= rough.value.hi_double());

    CHECK_THROWS_AS(fopt::compute_c0(32), fopt::OutOfRangeError);
}

TEST_CASE("kernel minimum for the smallest orders") {
    DirichletKernelMin m1 = fopt::dirichlet_min(1);
    CHECK(m1.m_n.contains(rat(-1)));
    CHECK(m1.m_n.width() <= 1e-9);
    CHECK(m1.n == 1);

    DirichletKernelMin m2 = fopt::dirichlet_min(2);
    CHECK(m2.m_n.contains(rat(-5, 4)));
    CHECK(m2.m_n.width() <= 1e-9);

    CHECK_THROWS_AS(fopt::dirichlet_min(0), fopt::OutOfRangeError);
}

TEST_CASE("kernel minimum matches a dense scan") {
    DirichletKernelMin m2 = fopt::dirichlet_min(2);
    double grid = 1.0;
    const long n = 1000000;
    for (long j = 1; j < n; ++j) {
        double x = 2.0 * 3.14159265358979323846 * static_cast<double>(j) / n;
        grid = std::min(grid, dirichlet_kernel(2, x));
    }
    CHECK(std::fabs(grid - m2.m_n.mid()) <= 1e-9);

    DirichletKernelMin m3 = fopt::dirichlet_min(3);
    grid = 1.0;
    for (long j = 1; j < n; ++j) {
        double x = 2.0 * 3.14159265358979323846 * static_cast<double>(j) / n;
        grid = std::min(grid, dirichlet_kernel(3, x));
    }
    CHECK(std::fabs(grid - m3.m_n.mid()) <= 1e-9);
}

TEST_CASE("kernel minimum ratio trends to twice the constant") {
    C0Constant c0 = fopt::compute_c0(96);
    double target = 2.0 * c0.value.mid();
    for (long n : {5L, 10L}) {
        DirichletKernelMin m = fopt::dirichlet_min(n);
        double ratio = m.ratio.mid();
        CHECK(std::fabs(ratio - target) <= 3.0 / static_cast<double>(n));
        CHECK(std::fabs(m.m_n.mid() / static_cast<double>(n) - ratio) <= 1e-12);
    }
    DirichletKernelMin m50 = fopt::dirichlet_min(50);
    CHECK(std::fabs(m50.ratio.mid() - target) <= 0.02);
}
