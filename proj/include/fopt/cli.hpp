#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fopt/enclosure.hpp"
#include "fopt/poly.hpp"

namespace fopt {

struct VerifyCheck {
    std::string name;
    std::string claimed;
    Enclosure computed;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = false;
};

// Full reproduction battery: the four published polynomials against their
// claimed bounds, the unit-polynomial values, c0 digits, the Dirichlet-kernel
// ratio trend, closed-form seam continuity, and the improvement over the
// previously known window.
VerifyReport run_verify_battery();

// Resolves the built-in aliases p1, p2, p3, q2, otherwise parses text as
// comma-separated even coefficients.
EvenPolynomial resolve_polynomial(const std::string& text);

// Testable CLI entry point. Structured results go to out, diagnostics to err.
// Exit codes: 0 success, 1 verify failure, 2 usage/parse/range error,
// 3 infeasible input, 4 optimization failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fopt
