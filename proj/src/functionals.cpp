#include "fopt/functionals.hpp"

#include "fopt/errors.hpp"
#include "fopt/extremize.hpp"

namespace fopt {

BoundDirection direction_of(FunctionalKind kind) {
    switch (kind) {
        case FunctionalKind::ep1:
        case FunctionalKind::ep3:
            return BoundDirection::upper_bound_inf;
        default:
            return BoundDirection::lower_bound_sup;
    }
}

bool uses_c0(FunctionalKind kind) {
    return kind != FunctionalKind::ep1 && kind != FunctionalKind::ep3;
}

std::string to_string(FunctionalKind kind) {
    switch (kind) {
        case FunctionalKind::ep1: return "EP1";
        case FunctionalKind::ep2: return "EP2";
        case FunctionalKind::ep3: return "EP3";
        case FunctionalKind::ep4: return "EP4";
        case FunctionalKind::j1_a1: return "J1_A1";
        case FunctionalKind::j2_a1: return "J2_A1";
    }
    return "?";
}

std::optional<FunctionalKind> parse_functional_kind(std::string_view text) {
    std::string up;
    up.reserve(text.size());
    for (char c : text) up.push_back(c >= 'a' && c <= 'z' ? static_cast<char>(c - 32) : c);
    if (up == "EP1") return FunctionalKind::ep1;
    if (up == "EP2") return FunctionalKind::ep2;
    if (up == "EP3") return FunctionalKind::ep3;
    if (up == "EP4") return FunctionalKind::ep4;
    if (up == "J1_A1" || up == "J1") return FunctionalKind::j1_a1;
    if (up == "J2_A1" || up == "J2") return FunctionalKind::j2_a1;
    return std::nullopt;
}

NumeratorParts functional_numerator(FunctionalKind kind, const EvenPolynomial& p) {
    Autocorrelation ac = autocorrelate(p);
    MomentSet ms = weighted_moments(ac);
    const Rational& q0 = ac.ghat_at_zero;
    const Rational& g0 = ac.g_at_zero;
    switch (kind) {
        case FunctionalKind::ep1:
            return {q0 + ms.m1, Rational(0)};
        case FunctionalKind::ep3:
            return {q0 + ms.m2 + ms.m3, Rational(0)};
        case FunctionalKind::ep2:
        case FunctionalKind::j1_a1:
            // (1-c0) g(0) + c0 (q(0)+M1)
            return {g0, q0 + ms.m1 - g0};
        case FunctionalKind::ep4:
        case FunctionalKind::j2_a1:
            // (1-c0) g(0) + (c0/2)(q(0)+M2+M3)
            return {g0, (q0 + ms.m2 + ms.m3) / 2 - g0};
    }
    return {};
}

BoundCertificate eval_functional(FunctionalKind kind, const EvenPolynomial& p,
                                 const Enclosure& c0, int m) {
    if (p.is_zero()) throw IdenticallyZeroError();
    if (m < 1) throw OutOfRangeError("eval_functional: m must be >= 1");

    Autocorrelation ac = autocorrelate(p);
    MomentSet ms = weighted_moments(ac);
    const Rational& q0 = ac.ghat_at_zero;
    const Rational& g0 = ac.g_at_zero;

    const BoundDirection dir = direction_of(kind);
    if (dir == BoundDirection::lower_bound_sup && g0 == 0)
        throw GZeroNotPositiveError();

    NumeratorParts parts;
    switch (kind) {
        case FunctionalKind::ep1:
            parts = {q0 + ms.m1, Rational(0)};
            break;
        case FunctionalKind::ep3:
            parts = {q0 + ms.m2 + ms.m3, Rational(0)};
            break;
        case FunctionalKind::ep2:
        case FunctionalKind::j1_a1:
            parts = {g0, q0 + ms.m1 - g0};
            break;
        case FunctionalKind::ep4:
        case FunctionalKind::j2_a1:
            parts = {g0, (q0 + ms.m2 + ms.m3) / 2 - g0};
            break;
    }

    Enclosure numerator = Enclosure::from_rational(parts.constant_part);
    if (parts.c0_coeff != 0)
        numerator = numerator + Enclosure::from_rational(parts.c0_coeff) * c0;

    Enclosure denominator = [&] {
        switch (kind) {
            case FunctionalKind::ep1:
                return min_abs_symmetric_sum(ac);
            case FunctionalKind::ep3:
                return Enclosure::from_rational(Rational(2)) * min_abs_symmetric_sum(ac);
            case FunctionalKind::ep2:
            case FunctionalKind::ep4:
                return max_abs_pair_sum(ac);
            default:
                return truncated_shift_sum_max(ac, m);
        }
    }();

    if (denominator.lo.sign() <= 0) throw ZeroDenominatorError();

    Enclosure value = numerator / denominator;
    BigFloat certified =
        dir == BoundDirection::upper_bound_inf ? value.hi : value.lo;
    return {kind, dir, parts, std::move(numerator), std::move(denominator),
            std::move(value), std::move(certified)};
}

NumeratorParts BilinearNumerator::apply(const std::vector<Rational>& a) const {
    const std::size_t n = size();
    Rational cpart(0), c0part(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Rational prod = a[i] * a[j];
            cpart += constant_matrix[i][j] * prod;
            c0part += c0_matrix[i][j] * prod;
        }
    }
    return {cpart, c0part};
}

BilinearNumerator bilinear_numerator_matrix(FunctionalKind kind, int d) {
    if (d < 0 || d % 2 != 0)
        throw OutOfRangeError("bilinear_numerator_matrix: d must be a nonnegative even integer");
    const std::size_t n = static_cast<std::size_t>(d / 2 + 1);

    auto numerator_of = [&](std::size_t i, std::size_t j) {
        // p_ij(x) = x^{2i} + x^{2j} (equal indices give 2 x^{2i})
        std::vector<Rational> coeffs(std::max(i, j) + 1, Rational(0));
        coeffs[i] += 1;
        coeffs[j] += 1;
        return functional_numerator(kind, EvenPolynomial(coeffs));
    };

    BilinearNumerator out;
    out.constant_matrix.assign(n, std::vector<Rational>(n, Rational(0)));
    out.c0_matrix.assign(n, std::vector<Rational>(n, Rational(0)));

    std::vector<NumeratorParts> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        NumeratorParts pii = numerator_of(i, i);  // = 4 c_ii
        diag[i] = {pii.constant_part / 4, pii.c0_coeff / 4};
        out.constant_matrix[i][i] = diag[i].constant_part;
        out.c0_matrix[i][i] = diag[i].c0_coeff;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            NumeratorParts pij = numerator_of(i, j);  // = c_ii + 2 c_ij + c_jj
            Rational cij = (pij.constant_part - diag[i].constant_part - diag[j].constant_part) / 2;
            Rational bij = (pij.c0_coeff - diag[i].c0_coeff - diag[j].c0_coeff) / 2;
            out.constant_matrix[i][j] = cij;
            out.constant_matrix[j][i] = cij;
            out.c0_matrix[i][j] = bij;
            out.c0_matrix[j][i] = bij;
        }
    }
    return out;
}

}  // namespace fopt
