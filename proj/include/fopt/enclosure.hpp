#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "fopt/rational.hpp"

namespace fopt {

// Working precision (bits) for enclosure endpoints. Default 128; the CLI overrides it
// from FOPT_PRECISION_BITS. Applies to BigFloats created afterwards.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

// Fixed-precision MPFR float with value semantics. Rounding is explicit at every
// conversion or arithmetic call site; this type never rounds silently.
class BigFloat {
  public:
    BigFloat();  // 0 at current global precision
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_rational(const Rational& r, mpfr_rnd_t rnd);
    static BigFloat from_double(double d);  // exact (precision >= 53)

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
    std::string to_string(int digits = 25) const;

    static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
    static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
    static BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
    static BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
    BigFloat neg() const;  // exact

    int cmp(const BigFloat& o) const;
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }
    bool operator==(const BigFloat& o) const { return cmp(o) == 0; }
    int sign() const;

    const mpfr_t& raw() const { return v_; }

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with directed-rounded endpoints. The invariant lo <= hi is
// maintained by every constructor and operation.
struct Enclosure {
    BigFloat lo, hi;

    Enclosure();
    Enclosure(BigFloat lo_, BigFloat hi_);

    // degenerate-from-exact and outward-rounded-from-rational constructors
    static Enclosure from_rational(const Rational& r);
    static Enclosure from_rationals(const Rational& lo, const Rational& hi);
    static Enclosure from_doubles(double lo, double hi);
    static Enclosure hull(const Enclosure& a, const Enclosure& b);

    Enclosure operator+(const Enclosure& o) const;
    Enclosure operator-(const Enclosure& o) const;
    Enclosure operator*(const Enclosure& o) const;
    // requires o.lo > 0 or o.hi < 0 (interval bounded away from zero)
    Enclosure operator/(const Enclosure& o) const;

    bool contains_zero() const;
    bool contains(const Rational& r) const;
    double width() const;
    double mid() const;
    double lo_double() const { return lo.to_double(MPFR_RNDD); }
    double hi_double() const { return hi.to_double(MPFR_RNDU); }
};

// Exact-rational interval; used internally where all arithmetic stays in Q.
struct RationalInterval {
    Rational lo, hi;
    RationalInterval() : lo(0), hi(0) {}
    RationalInterval(Rational l, Rational h);

    static RationalInterval point(const Rational& r) { return {r, r}; }

    RationalInterval operator+(const RationalInterval& o) const;
    RationalInterval operator-(const RationalInterval& o) const;
    RationalInterval operator*(const RationalInterval& o) const;
    RationalInterval abs() const;
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }

    Enclosure to_enclosure() const { return Enclosure::from_rationals(lo, hi); }
};

// Exact interval Horner evaluation of p over [x.lo, x.hi].
class PolyQ;
RationalInterval interval_eval(const PolyQ& p, const RationalInterval& x);

}  // namespace fopt
