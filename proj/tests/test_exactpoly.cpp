#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fopt/errors.hpp"
#include "fopt/poly.hpp"
#include "oracles.hpp"

using fopt::Autocorrelation;
using fopt::EvenPolynomial;
using fopt::MomentSet;
using fopt::PolyQ;
using fopt::Rational;
using fopt::rat;

TEST_CASE("polynomial arithmetic and evaluation") {
    PolyQ x = PolyQ::monomial(rat(1), 1);
    PolyQ one = PolyQ::constant(rat(1));
    PolyQ prod = (x + one) * (x - one);
    CHECK(prod == PolyQ({rat(-1), rat(0), rat(1)}));

    PolyQ window({rat(5), rat(0), rat(-1)});
    Rational at_half = window(rat(1, 2));
    CHECK(at_half == rat(19, 4));
    CHECK(window.eval_double(0.5) == doctest::Approx(4.75).epsilon(1e-15));

    CHECK(PolyQ().degree() == -1);
    CHECK(PolyQ({rat(3), rat(0), rat(0)}) == PolyQ::constant(rat(3)));
    PolyQ neg = -window;
    Rational neg_at_half = neg(rat(1, 2));
    CHECK(neg_at_half == rat(-19, 4));
    CHECK(window * rat(0) == PolyQ());
}

TEST_CASE("calculus operations are exact") {
    PolyQ f({rat(0), rat(-1), rat(0), rat(1)});  // x^3 - x
    CHECK(f.derivative() == PolyQ({rat(-1), rat(0), rat(3)}));
    CHECK(f.antiderivative().derivative() == f);

    PolyQ sq = PolyQ::monomial(rat(1), 2);
    PolyQ shifted = sq.compose_affine(rat(2), rat(1));  // (2x+1)^2
    CHECK(shifted == PolyQ({rat(1), rat(4), rat(4)}));

    Rational third = sq.integral(rat(0), rat(1));
    CHECK(third == rat(1, 3));
    Rational reversed = sq.integral(rat(1), rat(0));
    CHECK(reversed == rat(-1, 3));
}

TEST_CASE("even polynomial parsing and expansion") {
    EvenPolynomial p = EvenPolynomial::parse("5,-1");
    CHECK(p.even_coeffs().size() == 2);
    CHECK(p.expand() == PolyQ({rat(5), rat(0), rat(-1)}));
    CHECK(p.degree() == 2);

    EvenPolynomial c = EvenPolynomial::parse(" 19/4 ");
    CHECK(c.degree() == 0);
    Rational c0 = c.even_coeffs()[0];
    CHECK(c0 == rat(19, 4));

    EvenPolynomial decimal = EvenPolynomial::parse("1,-0.157");
    Rational d1 = decimal.even_coeffs()[1];
    CHECK(d1 == rat(-157, 1000));

    CHECK_THROWS_AS(EvenPolynomial::parse("1,,2"), fopt::OutOfRangeError);
    CHECK_THROWS_AS(EvenPolynomial::parse("no"), fopt::OutOfRangeError);
    CHECK_THROWS_AS(EvenPolynomial::parse(""), fopt::OutOfRangeError);

    EvenPolynomial round_trip = EvenPolynomial::parse(p.to_string());
    CHECK(round_trip.expand() == p.expand());

    PolyQ expanded = EvenPolynomial::parse("1,2,3").expand();
    for (std::size_t k = 1; k < expanded.coeffs().size(); k += 2) {
        Rational odd_coeff = expanded.coeff(k);
        CHECK(odd_coeff == rat(0));
    }
}

TEST_CASE("autocorrelation of the unit window") {
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse("1"));
    CHECK(ac.q == PolyQ({rat(1), rat(-1)}));
    CHECK(ac.g_at_zero == rat(1));
    CHECK(ac.ghat_at_zero == rat(1));
    Rational at_one = ac.q(rat(1));
    CHECK(at_one == rat(0));
}

TEST_CASE("autocorrelation of 5 - x^2 matches the frozen quadrature value") {
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse("5,-1"));
    // q(0) = int (5 - t^2)^2 over [-1/2, 1/2]; value frozen from the quadrature
    // oracle before the exact pipeline existed.
    CHECK(ac.ghat_at_zero == rat(5803, 240));
    CHECK(ac.g_at_zero == rat(3481, 144));

    PolyQ window({rat(5), rat(0), rat(-1)});
    double q0 = oracles::autocorrelation_value(window, 0.0);
    CHECK(std::fabs(q0 - fopt::to_double(ac.ghat_at_zero)) <= 1e-10);

    Rational q_at_one = ac.q(rat(1));
    CHECK(q_at_one == rat(0));
}

TEST_CASE("cross-correlation handles non-even windows") {
    PolyQ x = PolyQ::monomial(rat(1), 1);
    PolyQ q = fopt::crosscorrelate(x, x);
    CHECK(q == PolyQ({rat(1, 12), rat(-1, 4), rat(0), rat(1, 6)}));

    double numeric = oracles::integrate(
        [](double t) { return t * (t - 0.3); }, 0.3 - 0.5, 0.5);
    CHECK(std::fabs(q.eval_double(0.3) - numeric) <= 1e-12);
}

TEST_CASE("weighted moments of the unit window") {
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse("1"));
    MomentSet ms = fopt::weighted_moments(ac);
    CHECK(ms.m1 == rat(1, 3));
    CHECK(ms.m2 == rat(2, 3));
    CHECK(ms.m3 == rat(1, 2));
}

TEST_CASE("autocorrelation matches adaptive quadrature on random windows") {
    oracles::RationalSampler sampler(20240817);
    for (int trial = 0; trial < 20; ++trial) {
        int half_terms = 1 + static_cast<int>(sampler.rng()() % 7);
        EvenPolynomial p = sampler.even_poly(half_terms, 6, 6);
        if (p.is_zero()) continue;
        Autocorrelation ac = fopt::autocorrelate(p);
        PolyQ window = p.expand();
        for (int k = 0; k < 10; ++k) {
            double alpha = fopt::to_double(sampler.unit());
            double numeric = oracles::autocorrelation_value(window, alpha);
            CHECK(std::fabs(ac.q.eval_double(alpha) - numeric) <= 1e-10);
        }
        MomentSet ms = fopt::weighted_moments(ac);
        CHECK(std::fabs(fopt::to_double(ms.m1) - oracles::moment_m1(ac.q)) <= 1e-10);
        CHECK(std::fabs(fopt::to_double(ms.m2) - oracles::moment_m2(ac.q)) <= 1e-10);
        CHECK(std::fabs(fopt::to_double(ms.m3) - oracles::moment_m3(ac.q)) <= 1e-10);
    }
}

TEST_CASE("autocorrelation scaling, endpoint, and positivity properties") {
    oracles::RationalSampler sampler(77);
    for (int trial = 0; trial < 30; ++trial) {
        int half_terms = 1 + static_cast<int>(sampler.rng()() % 7);
        EvenPolynomial p = sampler.even_poly(half_terms, 9, 9);
        Rational c = sampler.draw(9, 9);
        if (c == 0) c = rat(2);

        std::vector<Rational> scaled_coeffs;
        for (const Rational& a : p.even_coeffs()) scaled_coeffs.push_back(a * c);
        EvenPolynomial scaled(scaled_coeffs);

        Autocorrelation ac = fopt::autocorrelate(p);
        Autocorrelation ac_scaled = fopt::autocorrelate(scaled);
        CHECK(ac_scaled.q == ac.q * (c * c));
        Rational g_scaled = ac.g_at_zero * c * c;
        CHECK(ac_scaled.g_at_zero == g_scaled);

        Rational end = ac.q(rat(1));
        CHECK(end == rat(0));
        CHECK(ac.g_at_zero >= 0);
        CHECK(ac.ghat_at_zero >= 0);
        CHECK((ac.ghat_at_zero > 0) == !p.is_zero());
    }
}

TEST_CASE("zero window is allowed and inert") {
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial());
    CHECK(ac.q.is_zero());
    CHECK(ac.g_at_zero == rat(0));
    CHECK(ac.ghat_at_zero == rat(0));
}
