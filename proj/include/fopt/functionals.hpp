#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fopt/enclosure.hpp"
#include "fopt/poly.hpp"

namespace fopt {

// The four extremal quotients plus the two averaged-form restrictions that
// coincide with EP2/EP4 on this test class.
enum class FunctionalKind { ep1, ep2, ep3, ep4, j1_a1, j2_a1 };

// upper_bound_inf: any evaluation certifies value >= inf, so report value.hi.
// lower_bound_sup: any evaluation certifies value <= sup, so report value.lo.
enum class BoundDirection { upper_bound_inf, lower_bound_sup };

BoundDirection direction_of(FunctionalKind kind);

// EP2/EP4/J numerators carry a c0 term; EP1/EP3 are exact rationals.
bool uses_c0(FunctionalKind kind);

std::string to_string(FunctionalKind kind);
std::optional<FunctionalKind> parse_functional_kind(std::string_view text);

// numerator(p) = constant_part + c0_coeff * c0, both exact rationals.
struct NumeratorParts {
    Rational constant_part;
    Rational c0_coeff;
};

NumeratorParts functional_numerator(FunctionalKind kind, const EvenPolynomial& p);

struct BoundCertificate {
    FunctionalKind kind;
    BoundDirection direction;
    NumeratorParts numerator_parts;  // exact; retightening c0 needs no recomputation
    Enclosure numerator;
    Enclosure denominator;  // invariant: denominator.lo > 0
    Enclosure value;        // numerator / denominator in interval arithmetic
    BigFloat certified_bound;  // value.hi (upper_bound_inf) or value.lo (lower_bound_sup)
};

// Throws IdenticallyZeroError for p == 0, GZeroNotPositiveError when a sup-kind
// gets g(0) = 0, ZeroDenominatorError when the denominator enclosure touches 0,
// OutOfRangeError for m < 1.
BoundCertificate eval_functional(FunctionalKind kind, const EvenPolynomial& p,
                                 const Enclosure& c0, int m = 3);

// numerator(p) = a^T (A + c0 B) a for the even-power coefficient vector a of p.
struct BilinearNumerator {
    std::vector<std::vector<Rational>> constant_matrix;  // A
    std::vector<std::vector<Rational>> c0_matrix;        // B

    std::size_t size() const { return constant_matrix.size(); }
    NumeratorParts apply(const std::vector<Rational>& a) const;
};

// d: even degree bound; coefficients run a_0..a_{d/2}. Built by evaluating the
// exact numerator on basis pairs p_ij(x) = x^{2i} + x^{2j}.
BilinearNumerator bilinear_numerator_matrix(FunctionalKind kind, int d);

}  // namespace fopt
