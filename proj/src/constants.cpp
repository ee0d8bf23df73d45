#include "fopt/constants.hpp"

#include <algorithm>
#include <queue>
#include <vector>

#include "fopt/errors.hpp"
#include "fopt/trig.hpp"

namespace fopt {

namespace {

// 4-corner interval quotient; requires b.lo > 0.
RationalInterval div_ri(const RationalInterval& a, const RationalInterval& b) {
    Rational c1 = a.lo / b.lo, c2 = a.lo / b.hi, c3 = a.hi / b.lo, c4 = a.hi / b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

// Sign of x cos x - sin x at a rational x; never zero there (tan x is irrational
// at nonzero rationals), so widening the tail precision always resolves it.
int critical_sign(const Rational& x, unsigned tail_bits) {
    for (unsigned bits = tail_bits; bits <= (1u << 20); bits *= 2) {
        RationalInterval s = sin_at(x, bits);
        RationalInterval c = cos_at(x, bits);
        RationalInterval g = RationalInterval::point(x) * c - s;
        if (g.lo > 0) return 1;
        if (g.hi < 0) return -1;
    }
    throw OutOfRangeError("critical_sign: sign did not resolve");
}

}  // namespace

C0Constant compute_c0(unsigned precision_bits) {
    if (precision_bits < 64) throw OutOfRangeError("compute_c0 needs precision_bits >= 64");
    const unsigned tail_bits = precision_bits + 32;

    Rational a(33, 10), b(63, 10);  // bracket inside (pi, 2 pi + 1/4)
    if (critical_sign(a, tail_bits) >= 0 || critical_sign(b, tail_bits) <= 0)
        throw OutOfRangeError("compute_c0: initial bracket lost the sign change");

    Rational width_target = Rational(1) / Rational(mpz_class(1) << (precision_bits - 24));
    while (b - a > width_target) {
        Rational mid = (a + b) / 2;
        if (critical_sign(mid, tail_bits) < 0) a = std::move(mid);
        else b = std::move(mid);
    }

    // cos is increasing on (pi, 2 pi), so the value enclosure comes from the
    // bracket endpoints directly.
    RationalInterval ca = cos_at(a, tail_bits);
    RationalInterval cb = cos_at(b, tail_bits);
    C0Constant out;
    out.critical_point = Enclosure::from_rationals(a, b);
    out.value = Enclosure::from_rationals(ca.lo, cb.hi);
    return out;
}

DirichletKernelMin dirichlet_min(long n) {
    if (n < 1) throw OutOfRangeError("dirichlet_min needs n >= 1");
    const unsigned bits = 96;
    const RationalInterval& pi = pi_bounds();
    const Rational two_n1(2 * n + 1);
    const Rational half_n1 = two_n1 / 2;  // n + 1/2

    const Rational z1_lo = 2 * pi.lo / two_n1;
    const Rational z2_lo = 4 * pi.lo / two_n1;
    const Rational z2_hi = 4 * pi.hi / two_n1;

    // kernel value at a rational point
    auto eval_point = [&](const Rational& x) {
        RationalInterval num = sin_at(x * half_n1, bits);
        RationalInterval den = sin_at(x / 2, bits);
        return div_ri(num, den);
    };
    // kernel enclosure over an interval: direct quotient intersected with the
    // mean-value form D(mid) + D'([lo,hi]) * [-w/2, w/2]. The quotient alone has
    // linear overestimate near the quadratic minimum, which stalls the search;
    // the mean-value form restores quadratic shrinkage.
    auto eval_interval = [&](const Rational& lo, const Rational& hi) {
        RationalInterval num = sin_over({lo * half_n1, hi * half_n1}, bits);
        RationalInterval den = sin_over({lo / 2, hi / 2}, bits);
        RationalInterval direct = div_ri(num, den);

        RationalInterval at_mid = eval_point((lo + hi) / 2);
        RationalInterval cn = cos_over({lo * half_n1, hi * half_n1}, bits);
        RationalInterval cd = cos_over({lo / 2, hi / 2}, bits);
        RationalInterval dnum = RationalInterval::point(half_n1) * cn * den -
                                RationalInterval::point(Rational(1, 2)) * cd * num;
        RationalInterval dprime = div_ri(dnum, den * den);
        Rational half_w = (hi - lo) / 2;
        RationalInterval mv =
            at_mid + dprime * RationalInterval{-half_w, half_w};

        Rational out_lo = std::max(direct.lo, mv.lo);
        Rational out_hi = std::min(direct.hi, mv.hi);
        return RationalInterval{out_lo, out_hi};
    };

    // first negative arch; past pi the symmetry about pi takes over
    const Rational lobe_a = z1_lo;
    const Rational lobe_b = std::min(z2_hi, pi.hi);

    Rational best_hi = eval_point((lobe_a + lobe_b) / 2).hi;
    for (int j = 1; j < 32; ++j) {
        Rational x = lobe_a + (lobe_b - lobe_a) * Rational(j, 32);
        best_hi = std::min(best_hi, eval_point(x).hi);
    }

    struct Node {
        Rational lo, hi, value_lo;
    };
    auto cmp = [](const Node& a, const Node& b) { return a.value_lo > b.value_lo; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    {
        RationalInterval e = eval_interval(lobe_a, lobe_b);
        heap.push({lobe_a, lobe_b, e.lo});
    }

    const Rational tol = Rational(1) / Rational(mpz_class(1) << 34);
    while (!heap.empty() && best_hi - heap.top().value_lo > tol) {
        Node nd = heap.top();
        heap.pop();
        Rational mid = (nd.lo + nd.hi) / 2;
        best_hi = std::min(best_hi, eval_point(mid).hi);
        RationalInterval left = eval_interval(nd.lo, mid);
        RationalInterval right = eval_interval(mid, nd.hi);
        // keep only subintervals that can still contain the minimum; pruned ones
        // have value >= best_hi, so best_hi stays a valid floor for them
        if (left.lo < best_hi) heap.push({nd.lo, mid, left.lo});
        if (right.lo < best_hi) heap.push({mid, nd.hi, right.lo});
    }
    Rational min_lo =
        heap.empty() ? best_hi : std::min(heap.top().value_lo, best_hi);

    // envelope bound past the arch (only needed when z2 < pi): sin(x/2) is
    // increasing there, so D_n >= -1/sin(z2/2)
    if (z2_hi < pi.lo) {
        Rational envelope = Rational(-1) / sin_at(z2_lo / 2, bits).lo;
        min_lo = std::min(min_lo, envelope);
    }

    if (best_hi >= 0)
        throw OutOfRangeError("dirichlet_min: arch sampling failed to go negative");

    DirichletKernelMin out;
    out.n = n;
    out.m_n = Enclosure::from_rationals(min_lo, best_hi);
    out.ratio = Enclosure::from_rationals(min_lo / n, best_hi / n);
    return out;
}

}  // namespace fopt
