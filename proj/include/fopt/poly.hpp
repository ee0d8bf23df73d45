#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fopt/rational.hpp"

namespace fopt {

// Dense univariate polynomial over Q, coefficients ascending by power.
// Normalized: no trailing zero coefficients; the zero polynomial has empty coeffs.
class PolyQ {
  public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coeffs);
    static PolyQ constant(const Rational& c);
    static PolyQ monomial(const Rational& c, std::size_t power);

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is reported as -1
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t k) const;

    Rational operator()(const Rational& x) const;  // exact Horner
    double eval_double(double x) const;

    PolyQ operator+(const PolyQ& o) const;
    PolyQ operator-(const PolyQ& o) const;
    PolyQ operator*(const PolyQ& o) const;
    PolyQ operator*(const Rational& c) const;
    PolyQ operator-() const;
    bool operator==(const PolyQ& o) const = default;

    PolyQ derivative() const;
    PolyQ antiderivative() const;  // constant term 0
    // p(scale*x + shift)
    PolyQ compose_affine(const Rational& scale, const Rational& shift) const;
    // exact definite integral over [lo, hi]
    Rational integral(const Rational& lo, const Rational& hi) const;

    std::string to_string() const;  // human-readable, for diagnostics

  private:
    void normalize();
    std::vector<Rational> coeffs_;
};

// Even polynomial given by coefficients of ascending even powers:
// even_coeffs = {a0, a1, ...} represents a0 + a1 x^2 + a2 x^4 + ...
class EvenPolynomial {
  public:
    EvenPolynomial() = default;
    explicit EvenPolynomial(std::vector<Rational> even_coeffs);

    // Parses comma-separated rational coefficients of ascending even powers,
    // e.g. "5,-1" is 5 - x^2.
    static EvenPolynomial parse(const std::string& text);

    const std::vector<Rational>& even_coeffs() const { return even_coeffs_; }
    PolyQ expand() const;  // full polynomial, only even powers present
    bool is_zero() const;
    long degree() const;  // degree of the expansion (-1 for zero)
    std::string to_string() const;  // comma-separated even coefficients

  private:
    std::vector<Rational> even_coeffs_;
};

// Weighted tail moments of an autocorrelation q on [0,1]:
//   m1 = 2 * int_0^1     a q(a) da
//   m2 = 8 * int_0^{1/2} a q(a) da
//   m3 = 4 * int_{1/2}^1   q(a) da
struct MomentSet {
    Rational m1, m2, m3;
};

// Autocorrelation package of a window polynomial p supported on [-1/2, 1/2]:
//   q(a) = int_{a-1/2}^{1/2} p(t) p(t-a) dt  (valid for a in [0,1], q(1) = 0)
//   g_at_zero    = (int_{-1/2}^{1/2} p)^2
//   ghat_at_zero = q(0) = int p^2
struct Autocorrelation {
    PolyQ q;
    Rational g_at_zero;
    Rational ghat_at_zero;
};

// Cross-correlation int_{a-1/2}^{1/2} f(t) g(t-a) dt as an exact polynomial in a.
// Building block for autocorrelate; also the oracle backdoor for non-even windows.
PolyQ crosscorrelate(const PolyQ& f, const PolyQ& g);

// The zero window is allowed (q = 0, both values 0); consumers that need a nonzero
// autocorrelation reject it themselves.
Autocorrelation autocorrelate(const EvenPolynomial& p);

MomentSet weighted_moments(const Autocorrelation& ac);

}  // namespace fopt
