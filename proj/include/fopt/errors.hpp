#pragma once

#include <stdexcept>
#include <string>

namespace fopt {

// Base for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input polynomial (or a derived quantity that must be nonzero) is the zero polynomial.
struct IdenticallyZeroError : Error {
    IdenticallyZeroError() : Error("polynomial is identically zero") {}
    explicit IdenticallyZeroError(const std::string& what) : Error(what) {}
};

// A certified denominator enclosure touches or crosses zero; no bound can be issued.
struct ZeroDenominatorError : Error {
    explicit ZeroDenominatorError(const std::string& what = "denominator enclosure contains zero")
        : Error(what) {}
};

// Functionals normalized by g(0) require g(0) > 0.
struct GZeroNotPositiveError : Error {
    GZeroNotPositiveError() : Error("g(0) must be positive for this functional") {}
};

// Argument outside the documented domain.
struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& what) : Error(what) {}
};

// A candidate configuration violates its side constraint; carries a violating point.
struct InfeasibleError : Error {
    std::string witness;
    explicit InfeasibleError(std::string witness_point)
        : Error("configuration infeasible at " + witness_point), witness(std::move(witness_point)) {}
};

// Every optimizer start ended in the penalty region.
struct NoFeasibleCandidateError : Error {
    NoFeasibleCandidateError() : Error("no feasible candidate found by any start") {}
};

}  // namespace fopt
