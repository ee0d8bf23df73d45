#include "fopt/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace fopt {

namespace {

bool is_rational_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    bool digits = false, slash = false, dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
        } else if (c == '/' && !slash && !dot && digits) {
            slash = true;
            digits = false;
        } else if (c == '.' && !dot && !slash) {
            dot = true;
        } else {
            return false;
        }
    }
    return digits || dot;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    if (!is_rational_token(s))
        throw OutOfRangeError("cannot parse rational: '" + text + "'");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        bool neg = !s.empty() && s[0] == '-';
        std::string digits = (neg ? s.substr(1, dot - 1) : s.substr(0, dot)) + s.substr(dot + 1);
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        if (digits.empty()) digits = "0";
        std::size_t frac_len = s.size() - dot - 1;
        Rational num(mpz_class(digits, 10));
        Rational den(1);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational r = num / den;
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw OutOfRangeError("zero denominator in rational: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

Rational dyadic_floor(const Rational& r, unsigned bits) {
    mpz_class scaled_num = r.get_num() << bits;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
    Rational out(q);
    out /= Rational(mpz_class(1) << bits);
    out.canonicalize();
    return out;
}

Rational dyadic_ceil(const Rational& r, unsigned bits) {
    mpz_class scaled_num = r.get_num() << bits;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
    Rational out(q);
    out /= Rational(mpz_class(1) << bits);
    out.canonicalize();
    return out;
}

Rational floor_rational(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rational(q);
}

Rational fractional_part(const Rational& r) { return r - floor_rational(r); }

Rational rationalize(double x, unsigned long max_den) {
    if (max_den == 0) throw OutOfRangeError("rationalize: max_den must be positive");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // continued-fraction convergents p_k/q_k of v, stop before q exceeds the cap
    mpz_class p0 = 1, q0 = 0;  // p_{-1}/q_{-1}
    mpz_class p1(static_cast<unsigned long>(v)), q1 = 1;
    double frac = v - static_cast<double>(static_cast<unsigned long>(v));
    for (int it = 0; it < 64 && frac > 1e-18; ++it) {
        double inv = 1.0 / frac;
        double whole = std::floor(inv);
        if (whole > 9e18) break;
        mpz_class a(static_cast<unsigned long>(whole));
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > mpz_class(max_den)) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        frac = inv - whole;
    }
    Rational r{Rational(p1) / Rational(q1)};
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

PolyQ::PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

PolyQ PolyQ::constant(const Rational& c) { return PolyQ({c}); }

PolyQ PolyQ::monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return PolyQ(std::move(v));
}

void PolyQ::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational PolyQ::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational PolyQ::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double PolyQ::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + it->get_d();
    return acc;
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator-() const {
    std::vector<Rational> v = coeffs_;
    for (auto& c : v) c = -c;
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
    if (is_zero() || o.is_zero()) return PolyQ();
    std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator*(const Rational& c) const {
    std::vector<Rational> v = coeffs_;
    for (auto& x : v) x *= c;
    return PolyQ(std::move(v));
}

PolyQ PolyQ::derivative() const {
    if (coeffs_.size() <= 1) return PolyQ();
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        v[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return PolyQ(std::move(v));
}

PolyQ PolyQ::antiderivative() const {
    if (is_zero()) return PolyQ();
    std::vector<Rational> v(coeffs_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
    return PolyQ(std::move(v));
}

PolyQ PolyQ::compose_affine(const Rational& scale, const Rational& shift) const {
    PolyQ inner({shift, scale});
    PolyQ acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * inner + PolyQ::constant(*it);
    return acc;
}

Rational PolyQ::integral(const Rational& lo, const Rational& hi) const {
    PolyQ F = antiderivative();
    return F(hi) - F(lo);
}

std::string PolyQ::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        Rational c = abs_of(coeffs_[i]);
        if (i == 0 || c != 1) os << c.get_str();
        if (i > 0) {
            if (c != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

EvenPolynomial::EvenPolynomial(std::vector<Rational> even_coeffs)
    : even_coeffs_(std::move(even_coeffs)) {
    while (!even_coeffs_.empty() && even_coeffs_.back() == 0) even_coeffs_.pop_back();
}

EvenPolynomial EvenPolynomial::parse(const std::string& text) {
    std::vector<Rational> coeffs;
    std::string token;
    std::istringstream is(text);
    bool any = false;
    while (std::getline(is, token, ',')) {
        coeffs.push_back(parse_rational(token));
        any = true;
    }
    if (!any) throw OutOfRangeError("empty polynomial text");
    return EvenPolynomial(std::move(coeffs));
}

PolyQ EvenPolynomial::expand() const {
    if (even_coeffs_.empty()) return PolyQ();
    std::vector<Rational> v(2 * even_coeffs_.size() - 1, Rational(0));
    for (std::size_t k = 0; k < even_coeffs_.size(); ++k) v[2 * k] = even_coeffs_[k];
    return PolyQ(std::move(v));
}

bool EvenPolynomial::is_zero() const { return even_coeffs_.empty(); }

long EvenPolynomial::degree() const {
    return even_coeffs_.empty() ? -1 : 2 * (static_cast<long>(even_coeffs_.size()) - 1);
}

std::string EvenPolynomial::to_string() const {
    if (even_coeffs_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < even_coeffs_.size(); ++i) {
        if (i) os << ",";
        os << even_coeffs_[i].get_str();
    }
    return os.str();
}

PolyQ crosscorrelate(const PolyQ& f, const PolyQ& g) {
    if (f.is_zero() || g.is_zero()) return PolyQ();
    // Work with the product f(t) g(t-a) as a polynomial in t whose coefficients are
    // polynomials in a, integrate in t symbolically, then substitute the limits.
    const Rational half(1, 2);
    std::size_t nf = f.coeffs().size(), ng = g.coeffs().size();

    // g(t-a): coefficient of t^k is sum_j g_j C(j,k) (-a)^(j-k)
    std::vector<PolyQ> gshift(ng);  // index: power of t, value: polynomial in a
    for (std::size_t j = 0; j < ng; ++j) {
        Rational binom(1);
        for (std::size_t k = 0; k <= j; ++k) {
            // C(j,k) computed incrementally: C(j,0)=1, C(j,k) = C(j,k-1)*(j-k+1)/k
            if (k > 0) binom = binom * Rational(static_cast<long>(j - k + 1)) /
                               Rational(static_cast<long>(k));
            // term g_j * C(j,k) * (-1)^(j-k) * a^(j-k) * t^k
            Rational c = g.coeffs()[j] * binom;
            if ((j - k) % 2 == 1) c = -c;
            gshift[k] = gshift[k] + PolyQ::monomial(c, j - k);
        }
    }

    // product coefficients in t (each a PolyQ in a)
    std::vector<PolyQ> prod(nf + ng - 1);
    for (std::size_t i = 0; i < nf; ++i) {
        if (f.coeffs()[i] == 0) continue;
        for (std::size_t k = 0; k < ng; ++k)
            prod[i + k] = prod[i + k] + gshift[k] * f.coeffs()[i];
    }

    // antiderivative in t: F(t) = sum_m prod[m] * t^(m+1)/(m+1); evaluate at
    // t = 1/2 and t = a - 1/2 (the latter expands to a polynomial in a)
    PolyQ upper, lower;
    PolyQ t_at_lower_power = PolyQ::constant(Rational(1));  // (a - 1/2)^0
    const PolyQ a_minus_half({Rational(-1, 2), Rational(1)});
    Rational half_power(1);  // (1/2)^0
    for (std::size_t m = 0; m < prod.size(); ++m) {
        t_at_lower_power = t_at_lower_power * a_minus_half;  // (a-1/2)^(m+1)
        half_power *= half;                                   // (1/2)^(m+1)
        if (prod[m].is_zero()) continue;
        Rational inv(1, static_cast<long>(m + 1));
        upper = upper + prod[m] * (half_power * inv);
        lower = lower + prod[m] * inv * t_at_lower_power;
    }
    return upper - lower;
}

Autocorrelation autocorrelate(const EvenPolynomial& p) {
    PolyQ full = p.expand();
    Autocorrelation ac;
    ac.q = crosscorrelate(full, full);
    Rational mean = full.integral(Rational(-1, 2), Rational(1, 2));
    ac.g_at_zero = mean * mean;
    ac.ghat_at_zero = ac.q.is_zero() ? Rational(0) : ac.q(Rational(0));
    return ac;
}

MomentSet weighted_moments(const Autocorrelation& ac) {
    const PolyQ aq = PolyQ::monomial(Rational(1), 1) * ac.q;
    MomentSet m;
    m.m1 = aq.integral(Rational(0), Rational(1)) * 2;
    m.m2 = aq.integral(Rational(0), Rational(1, 2)) * 8;
    m.m3 = ac.q.integral(Rational(1, 2), Rational(1)) * 4;
    return m;
}

}  // namespace fopt
