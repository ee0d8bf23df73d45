#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fopt/errors.hpp"
#include "fopt/extremize.hpp"
#include "fopt/poly.hpp"
#include "oracles.hpp"

using fopt::Autocorrelation;
using fopt::Enclosure;
using fopt::EvenPolynomial;
using fopt::PolyQ;
using fopt::Rational;
using fopt::RationalInterval;
using fopt::SignPartition;
using fopt::rat;

namespace {

// |q(a)| + |q(1-a)| as a plain double function.
double pair_sum_at(const PolyQ& q, double a) {
    return std::fabs(q.eval_double(a)) + std::fabs(q.eval_double(1.0 - a));
}

// q(a) + q(1-a) as a plain double function.
double sym_sum_at(const PolyQ& q, double a) {
    return q.eval_double(a) + q.eval_double(1.0 - a);
}

PolyQ symmetric_sum_poly(const PolyQ& q) {
    return q + q.compose_affine(rat(-1), rat(1));
}

}  // namespace

TEST_CASE("root isolation on linear and rootless inputs") {
    PolyQ line({rat(-1, 2), rat(1)});  // a - 1/2
    SignPartition part = fopt::isolate_roots(line, rat(0), rat(1));
    REQUIRE(part.roots.size() == 1);
    CHECK(part.roots[0].lo <= rat(1, 2));
    CHECK(part.roots[0].hi >= rat(1, 2));
    REQUIRE(part.signs.size() == 2);
    CHECK(part.signs[0] == -1);
    CHECK(part.signs[1] == 1);

    PolyQ rootless({rat(-2), rat(0), rat(1)});  // a^2 - 2 < 0 on [0,1]
    SignPartition none = fopt::isolate_roots(rootless, rat(0), rat(1));
    CHECK(none.roots.empty());
    REQUIRE(none.signs.size() == 1);
    CHECK(none.signs[0] == -1);

    CHECK_THROWS_AS(fopt::isolate_roots(PolyQ(), rat(0), rat(1)), fopt::IdenticallyZeroError);
}

TEST_CASE("root boxes are narrow, disjoint, and sign-consistent") {
    // (a - 1/4)(a - 1/2)(a - 3/4) has three simple roots in [0,1].
    PolyQ f = PolyQ({rat(-1, 4), rat(1)}) * PolyQ({rat(-1, 2), rat(1)}) *
              PolyQ({rat(-3, 4), rat(1)});
    SignPartition part = fopt::isolate_roots(f, rat(0), rat(1));
    REQUIRE(part.roots.size() == 3);
    Rational max_width = rat(1, 1L << 30);
    for (std::size_t i = 0; i < part.roots.size(); ++i) {
        Rational w = part.roots[i].hi - part.roots[i].lo;
        CHECK(w <= max_width);
        if (i + 1 < part.roots.size()) CHECK(part.roots[i].hi < part.roots[i + 1].lo);
    }
    REQUIRE(part.signs.size() == 4);
    CHECK(part.signs[0] == -1);
    CHECK(part.signs[1] == 1);
    CHECK(part.signs[2] == -1);
    CHECK(part.signs[3] == 1);
}

TEST_CASE("sign alternations of a derivative match a dense scan") {
    // A scan only sees odd-multiplicity crossings; touch roots flip nothing.
    // Alternations in the partition's sign sequence count exactly those.
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse("5,-1"));
    PolyQ s = symmetric_sum_poly(ac.q);
    SignPartition part = fopt::isolate_roots(s.derivative(), rat(0), rat(1));
    REQUIRE(!part.roots.empty());
    REQUIRE(part.signs.size() == part.roots.size() + 1);

    long alternations = 0;
    for (std::size_t i = 0; i + 1 < part.signs.size(); ++i)
        if (part.signs[i] * part.signs[i + 1] == -1) ++alternations;

    long scan_changes = 0;
    const long n = 1000000;
    double prev = 0.0;
    bool have_prev = false;
    for (long j = 0; j <= n; ++j) {
        double a = static_cast<double>(j) / static_cast<double>(n);
        double d = s.derivative().eval_double(a);
        if (have_prev && ((prev < 0 && d > 0) || (prev > 0 && d < 0))) ++scan_changes;
        if (d != 0.0) {
            prev = d;
            have_prev = true;
        }
    }
    CHECK(alternations == scan_changes);
}

TEST_CASE("certified minimum of |f| hits exact zeros and positive floors") {
    PolyQ line({rat(-1, 2), rat(1)});
    RationalInterval zero = fopt::certified_min_abs(line, rat(0), rat(1));
    CHECK(zero.lo == rat(0));
    CHECK(zero.hi == rat(0));

    PolyQ floor({rat(2), rat(0), rat(1)});  // a^2 + 2 >= 2
    RationalInterval pos = fopt::certified_min_abs(floor, rat(0), rat(1));
    CHECK(pos.lo <= rat(2));
    CHECK(pos.hi >= rat(2));
    CHECK(pos.lo > rat(0));
}

TEST_CASE("symmetric-sum minimum on reference windows") {
    Autocorrelation unit = fopt::autocorrelate(EvenPolynomial::parse("1"));
    Enclosure one = fopt::min_abs_symmetric_sum(unit);
    CHECK(one.contains(rat(1)));
    CHECK(one.width() <= 1e-25);

    // q from the odd backdoor window changes sign: s(0) = 1/12, s(1/2) = -1/24.
    PolyQ x = PolyQ::monomial(rat(1), 1);
    Autocorrelation odd{fopt::crosscorrelate(x, x), rat(0), rat(1, 12)};
    Rational s0 = symmetric_sum_poly(odd.q)(rat(0));
    Rational s_half = symmetric_sum_poly(odd.q)(rat(1, 2));
    CHECK(s0 == rat(1, 12));
    CHECK(s_half == rat(-1, 24));
    Enclosure zero = fopt::min_abs_symmetric_sum(odd);
    CHECK(zero.contains(rat(0)));
    CHECK(zero.width() <= 1e-25);
}

TEST_CASE("pair-sum maximum on reference windows") {
    Autocorrelation unit = fopt::autocorrelate(EvenPolynomial::parse("1"));
    Enclosure one = fopt::max_abs_pair_sum(unit);
    CHECK(one.contains(rat(1)));
    CHECK(one.width() <= 1e-25);

    Autocorrelation zero = fopt::autocorrelate(EvenPolynomial());
    CHECK_THROWS_AS(fopt::max_abs_pair_sum(zero), fopt::IdenticallyZeroError);
}

TEST_CASE("certified extremes bracket dense grid scans") {
    for (const char* text : {"5,-1", "1,-1", "1,-157/1000,69/10,-59,-152,815,200"}) {
        Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse(text));
        Enclosure mn = fopt::min_abs_symmetric_sum(ac);
        Enclosure mx = fopt::max_abs_pair_sum(ac);

        double grid_mn = oracles::grid_min(
            [&](double a) { return std::fabs(sym_sum_at(ac.q, a)); }, 0.0, 1.0, 1000001);
        double grid_mx = oracles::grid_max(
            [&](double a) { return pair_sum_at(ac.q, a); }, 0.0, 1.0, 1000001);

        CHECK(grid_mn >= mn.lo_double() - 1e-9);
        CHECK(grid_mn <= mn.hi_double() + mn.width() + 1e-9);
        CHECK(grid_mx <= mx.hi_double() + 1e-9);
        CHECK(grid_mx >= mx.lo_double() - mx.width() - 1e-9);
    }
}

TEST_CASE("truncated shift sum collapses to the pair sum for m >= 1") {
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse("5,-1"));
    Enclosure pair = fopt::max_abs_pair_sum(ac);
    for (int m : {1, 2, 3, 7}) {
        Enclosure trunc = fopt::truncated_shift_sum_max(ac, m);
        CHECK(trunc.lo == pair.lo);
        CHECK(trunc.hi == pair.hi);
    }

    Autocorrelation unit = fopt::autocorrelate(EvenPolynomial::parse("1"));
    Enclosure only_q = fopt::truncated_shift_sum_max(unit, 0);
    CHECK(only_q.contains(rat(1)));

    CHECK_THROWS_AS(fopt::truncated_shift_sum_max(ac, -1), fopt::OutOfRangeError);
}

TEST_CASE("enclosures are sound at random sample points") {
    Autocorrelation ac = fopt::autocorrelate(EvenPolynomial::parse("5,-1"));
    Enclosure mn = fopt::min_abs_symmetric_sum(ac);
    Enclosure mx = fopt::max_abs_pair_sum(ac);
    oracles::RationalSampler sampler(4242);
    for (int k = 0; k < 1000; ++k) {
        Rational a = sampler.unit();
        Rational s = ac.q(a) + ac.q(1 - a);
        Rational abs_s = fopt::abs_of(s);
        Rational pair = fopt::abs_of(ac.q(a)) + fopt::abs_of(ac.q(1 - a));
        CHECK(fopt::to_double(abs_s) >= mn.lo_double() - 1e-15);
        CHECK(fopt::to_double(pair) <= mx.hi_double() + 1e-15);
    }
}

TEST_CASE("one-sided guarantees hold on random windows") {
    oracles::RationalSampler sampler(909090);
    int done = 0;
    while (done < 25) {
        int half_terms = 1 + static_cast<int>(sampler.rng()() % 7);
        EvenPolynomial p = sampler.even_poly(half_terms, 5, 5);
        if (p.is_zero()) continue;
        ++done;
        Autocorrelation ac = fopt::autocorrelate(p);
        Enclosure mn = fopt::min_abs_symmetric_sum(ac);
        Enclosure mx = fopt::max_abs_pair_sum(ac);
        double grid_mn = oracles::grid_min(
            [&](double a) { return std::fabs(sym_sum_at(ac.q, a)); }, 0.0, 1.0, 20001);
        double grid_mx = oracles::grid_max(
            [&](double a) { return pair_sum_at(ac.q, a); }, 0.0, 1.0, 20001);
        CHECK(grid_mn >= mn.lo_double() - 1e-12 * (1.0 + std::fabs(grid_mn)));
        CHECK(grid_mx <= mx.hi_double() + 1e-12 * (1.0 + std::fabs(grid_mx)));
    }
}

TEST_CASE("extremes scale quadratically with the window") {
    oracles::RationalSampler sampler(555);
    for (int trial = 0; trial < 10; ++trial) {
        int half_terms = 1 + static_cast<int>(sampler.rng()() % 5);
        EvenPolynomial p = sampler.even_poly(half_terms, 5, 5);
        if (p.is_zero()) continue;
        Rational c = sampler.draw(5, 3);
        if (c == 0) c = rat(3);

        std::vector<Rational> scaled_coeffs;
        for (const Rational& a : p.even_coeffs()) scaled_coeffs.push_back(a * c);
        Autocorrelation ac = fopt::autocorrelate(p);
        Autocorrelation ac_scaled = fopt::autocorrelate(EvenPolynomial(scaled_coeffs));

        double factor = fopt::to_double(c * c);
        Enclosure mn = fopt::min_abs_symmetric_sum(ac);
        Enclosure mn_scaled = fopt::min_abs_symmetric_sum(ac_scaled);
        double mn_target = factor * mn.mid();
        CHECK(std::fabs(mn_scaled.mid() - mn_target) <= 1e-10 * (1.0 + std::fabs(mn_target)));
        Enclosure mx = fopt::max_abs_pair_sum(ac);
        Enclosure mx_scaled = fopt::max_abs_pair_sum(ac_scaled);
        double mx_target = factor * mx.mid();
        CHECK(std::fabs(mx_scaled.mid() - mx_target) <= 1e-10 * (1.0 + std::fabs(mx_target)));
    }
}
