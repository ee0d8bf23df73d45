#include "fopt/trig.hpp"

#include <algorithm>

#include "fopt/errors.hpp"

namespace fopt {

namespace {

// pi truncated/rounded to 50 fractional digits; [lo, hi] brackets the true value.
const char* kPiLo = "31415926535897932384626433832795028841971693993751";
const char* kPiHi = "31415926535897932384626433832795028841971693993752";

Rational digits_to_rational(const char* digits, int frac_digits) {
    Rational num(mpz_class(digits, 10));
    Rational den(1);
    for (int i = 0; i < frac_digits; ++i) den *= 10;
    Rational r = num / den;
    r.canonicalize();
    return r;
}

// Exact alternating Taylor sum at a point whose denominator is already modest.
// kind: 0 = sin, 1 = cos. Requires |x| <= 8 so the remainder bound below is valid.
RationalInterval taylor_trig(const Rational& x, unsigned tail_bits, int kind) {
    if (abs_of(x) > 8) throw OutOfRangeError("taylor_trig: |x| must be <= 8");
    Rational tail_target(1);
    tail_target /= Rational(mpz_class(1) << tail_bits);

    const Rational x2 = x * x;
    Rational term = (kind == 0) ? x : Rational(1);  // degree 1 or 0 term
    Rational sum = term;
    Rational next_abs;
    unsigned k = 0;
    while (true) {
        ++k;
        // sin: t_{k} = t_{k-1} * (-x^2) / ((2k)(2k+1)); cos: / ((2k-1)(2k))
        long a = (kind == 0) ? 2L * k : 2L * k - 1;
        long b = (kind == 0) ? 2L * k + 1 : 2L * k;
        term = term * x2 / Rational(a * b);
        term = -term;
        sum += term;
        next_abs = abs_of(term) * x2;
        long a2 = (kind == 0) ? 2L * k + 2 : 2L * k + 1;
        long b2 = (kind == 0) ? 2L * k + 3 : 2L * k + 2;
        next_abs /= Rational(a2 * b2);
        // once terms are strictly decreasing the alternating tail is bounded by the
        // next term; |x| <= 8 guarantees decrease from 2k >= 8 on
        if (k >= 4 && next_abs <= tail_target) break;
        if (k > 200) throw OutOfRangeError("taylor_trig: no convergence (internal)");
    }
    return {sum - next_abs, sum + next_abs};
}

// Dyadic pre-rounding keeps Taylor arithmetic cheap when x has a huge denominator.
RationalInterval trig_point(const Rational& x, unsigned tail_bits, int kind) {
    unsigned keep = tail_bits + 16;
    Rational lo = x, hi = x;
    if (mpz_sizeinbase(x.get_den().get_mpz_t(), 2) > keep + 8) {
        lo = dyadic_floor(x, keep);
        hi = dyadic_ceil(x, keep);
    }
    RationalInterval at_lo = taylor_trig(lo, tail_bits, kind);
    if (lo == hi) return at_lo;
    Rational slack = hi - lo;  // |f(x) - f(lo)| <= |x - lo| <= hi - lo
    return {at_lo.lo - slack, at_lo.hi + slack};
}

}  // namespace

const RationalInterval& pi_bounds() {
    static const RationalInterval pi{digits_to_rational(kPiLo, 49),
                                     digits_to_rational(kPiHi, 49)};
    return pi;
}

RationalInterval sin_at(const Rational& x, unsigned tail_bits) {
    return trig_point(x, tail_bits, 0);
}

RationalInterval cos_at(const Rational& x, unsigned tail_bits) {
    return trig_point(x, tail_bits, 1);
}

RationalInterval sin_over(const RationalInterval& x, unsigned tail_bits) {
    const RationalInterval& pi = pi_bounds();
    if (x.lo < 0 || x.hi > pi.hi * 2 + Rational(1, 4))
        throw OutOfRangeError("sin_over: interval must lie within [0, 2*pi + 1/4]");
    RationalInterval a = sin_at(x.lo, tail_bits);
    RationalInterval b = sin_at(x.hi, tail_bits);
    Rational lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    // critical points pi/2 + k*pi, k = 0..2 cover [0, 2pi + 1/4]
    for (int k = 0; k <= 2; ++k) {
        Rational crit_lo = pi.lo / 2 + pi.lo * k;
        Rational crit_hi = pi.hi / 2 + pi.hi * k;
        bool may_contain = !(crit_hi < x.lo || crit_lo > x.hi);
        if (!may_contain) continue;
        if (k % 2 == 0) hi = std::max(hi, Rational(1));
        else lo = std::min(lo, Rational(-1));
    }
    lo = std::max(lo, Rational(-1));
    hi = std::min(hi, Rational(1));
    return {lo, hi};
}

RationalInterval cos_over(const RationalInterval& x, unsigned tail_bits) {
    const RationalInterval& pi = pi_bounds();
    if (x.lo < 0 || x.hi > pi.hi * 2 + Rational(1, 4))
        throw OutOfRangeError("cos_over: interval must lie within [0, 2*pi + 1/4]");
    RationalInterval a = cos_at(x.lo, tail_bits);
    RationalInterval b = cos_at(x.hi, tail_bits);
    Rational lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    // critical points k*pi, k = 0..2 cover [0, 2pi + 1/4]
    for (int k = 0; k <= 2; ++k) {
        Rational crit_lo = pi.lo * k;
        Rational crit_hi = pi.hi * k;
        bool may_contain = !(crit_hi < x.lo || crit_lo > x.hi);
        if (!may_contain) continue;
        if (k % 2 == 0) hi = std::max(hi, Rational(1));
        else lo = std::min(lo, Rational(-1));
    }
    lo = std::max(lo, Rational(-1));
    hi = std::min(hi, Rational(1));
    return {lo, hi};
}

RationalInterval cbrt_of(const Rational& r, unsigned bits) {
    if (r < 0) throw OutOfRangeError("cbrt_of: argument must be >= 0");
    if (r == 0) return RationalInterval::point(Rational(0));
    Rational lo(0), hi = std::max(Rational(1), r);
    Rational width_target(1);
    width_target /= Rational(mpz_class(1) << bits);
    while (hi - lo > width_target) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid * mid <= r) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

}  // namespace fopt
