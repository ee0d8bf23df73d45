#include "fopt/enclosure.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "fopt/errors.hpp"
#include "fopt/poly.hpp"

namespace fopt {

namespace {
std::atomic<unsigned> g_precision_bits{128};
}

void set_precision_bits(unsigned bits) {
    if (bits < 64) throw OutOfRangeError("precision_bits must be >= 64");
    g_precision_bits.store(bits);
}

unsigned precision_bits() { return g_precision_bits.load(); }

BigFloat::BigFloat() {
    mpfr_init2(v_, precision_bits());
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_rational(const Rational& r, mpfr_rnd_t rnd) {
    BigFloat x;
    mpfr_set_q(x.v_, r.get_mpq_t(), rnd);
    return x;
}

BigFloat BigFloat::from_double(double d) {
    BigFloat x;
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
}

double BigFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

std::string BigFloat::to_string(int digits) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return buf;
}

#define FOPT_BIGFLOAT_BINOP(name, fn)                                             \
    BigFloat BigFloat::name(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { \
        BigFloat out;                                                             \
        fn(out.v_, a.v_, b.v_, r);                                                \
        return out;                                                               \
    }
FOPT_BIGFLOAT_BINOP(add, mpfr_add)
FOPT_BIGFLOAT_BINOP(sub, mpfr_sub)
FOPT_BIGFLOAT_BINOP(mul, mpfr_mul)
FOPT_BIGFLOAT_BINOP(div, mpfr_div)
#undef FOPT_BIGFLOAT_BINOP

BigFloat BigFloat::neg() const {
    BigFloat out;
    mpfr_neg(out.v_, v_, MPFR_RNDN);  // exact
    return out;
}

int BigFloat::cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

int BigFloat::sign() const { return mpfr_sgn(v_); }

Enclosure::Enclosure() = default;

Enclosure::Enclosure(BigFloat lo_, BigFloat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo > hi) throw std::logic_error("Enclosure endpoints out of order");
}

Enclosure Enclosure::from_rational(const Rational& r) {
    return {BigFloat::from_rational(r, MPFR_RNDD), BigFloat::from_rational(r, MPFR_RNDU)};
}

Enclosure Enclosure::from_rationals(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::logic_error("rational interval endpoints out of order");
    return {BigFloat::from_rational(lo, MPFR_RNDD), BigFloat::from_rational(hi, MPFR_RNDU)};
}

Enclosure Enclosure::from_doubles(double lo, double hi) {
    if (lo > hi) throw std::logic_error("double interval endpoints out of order");
    return {BigFloat::from_double(lo), BigFloat::from_double(hi)};
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
    return {std::min(a.lo, b.lo, [](const BigFloat& x, const BigFloat& y) { return x < y; }),
            std::max(a.hi, b.hi, [](const BigFloat& x, const BigFloat& y) { return x < y; })};
}

Enclosure Enclosure::operator+(const Enclosure& o) const {
    return {BigFloat::add(lo, o.lo, MPFR_RNDD), BigFloat::add(hi, o.hi, MPFR_RNDU)};
}

Enclosure Enclosure::operator-(const Enclosure& o) const {
    return {BigFloat::sub(lo, o.hi, MPFR_RNDD), BigFloat::sub(hi, o.lo, MPFR_RNDU)};
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
    const BigFloat* a[2] = {&lo, &hi};
    const BigFloat* b[2] = {&o.lo, &o.hi};
    BigFloat best_lo, best_hi;
    bool first = true;
    for (auto* x : a)
        for (auto* y : b) {
            BigFloat d = BigFloat::mul(*x, *y, MPFR_RNDD);
            BigFloat u = BigFloat::mul(*x, *y, MPFR_RNDU);
            if (first || d < best_lo) best_lo = d;
            if (first || u > best_hi) best_hi = u;
            first = false;
        }
    return {std::move(best_lo), std::move(best_hi)};
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
    if (o.contains_zero()) throw ZeroDenominatorError();
    const BigFloat* a[2] = {&lo, &hi};
    const BigFloat* b[2] = {&o.lo, &o.hi};
    BigFloat best_lo, best_hi;
    bool first = true;
    for (auto* x : a)
        for (auto* y : b) {
            BigFloat d = BigFloat::div(*x, *y, MPFR_RNDD);
            BigFloat u = BigFloat::div(*x, *y, MPFR_RNDU);
            if (first || d < best_lo) best_lo = d;
            if (first || u > best_hi) best_hi = u;
            first = false;
        }
    return {std::move(best_lo), std::move(best_hi)};
}

bool Enclosure::contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

bool Enclosure::contains(const Rational& r) const {
    return mpfr_cmp_q(lo.raw(), r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.raw(), r.get_mpq_t()) >= 0;
}

double Enclosure::width() const { return BigFloat::sub(hi, lo, MPFR_RNDU).to_double(MPFR_RNDU); }

double Enclosure::mid() const {
    return (lo.to_double(MPFR_RNDN) + hi.to_double(MPFR_RNDN)) / 2;
}

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::logic_error("RationalInterval endpoints out of order");
}

RationalInterval RationalInterval::operator+(const RationalInterval& o) const {
    return {lo + o.lo, hi + o.hi};
}

RationalInterval RationalInterval::operator-(const RationalInterval& o) const {
    return {lo - o.hi, hi - o.lo};
}

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
    Rational cands[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    return {*std::min_element(cands, cands + 4), *std::max_element(cands, cands + 4)};
}

RationalInterval RationalInterval::abs() const {
    if (lo >= 0) return *this;
    if (hi <= 0) return {-hi, -lo};
    return {Rational(0), std::max(Rational(-lo), hi)};
}

RationalInterval interval_eval(const PolyQ& p, const RationalInterval& x) {
    RationalInterval acc = RationalInterval::point(Rational(0));
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + RationalInterval::point(*it);
    return acc;
}

}  // namespace fopt
