#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fopt/functionals.hpp"
#include "fopt/poly.hpp"

namespace fopt {

struct OptimizerConfig {
    int dimension = 1;        // number of even coefficients a_0..a_{d/2}
    double step0 = 0.5;       // initial line-search bracket scale
    double tol = 1e-9;        // per-sweep displacement below this terminates
    long max_evals = 20000;   // objective-evaluation budget per start
    std::uint64_t seed = 1;
    int starts = 16;          // random initializations per optimize_functional run
    double penalty = 1e8;     // objective assigned to infeasible candidates
};

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
    std::vector<double> point;
    double value = 0.0;
    long evals = 0;
};

// Derivative-free principal-axis descent: per sweep, one line minimization along
// each axis, then the axis of largest decrease is replaced by the normalized net
// sweep displacement (conjugacy heuristic); the axis matrix is re-orthogonalized
// every `dimension` sweeps. Line searches never accept an uphill point, so the
// value is non-increasing and the result is never worse than the start.
MinimizeResult principal_axis_minimize(const Objective& objective,
                                       const OptimizerConfig& config,
                                       const std::vector<double>& start);

struct OptimizationReport {
    std::vector<double> best_coeffs;   // float coefficients of the reported candidate
    double best_value = 0.0;           // float functional value at best_coeffs
    BoundCertificate certified;        // exact recheck of rationalized best_coeffs
    long evals_used = 0;               // total across all starts
    std::vector<double> per_start_values;  // final functional value of each start
};

// Float-mode search (bilinear numerator matrices, scanned denominators) over the
// even-coefficient vector, followed by an exact recheck of the winner: rationalize
// coefficients at denominator <= 10^6 and run the certified evaluator. Seed
// polynomials contribute one extra start each and also compete verbatim, so a
// seeded run never certifies worse than its best seed. Throws OutOfRangeError for
// odd or oversized degree (> 24) or a seed of higher degree than requested, and
// NoFeasibleCandidateError when every start ends in the penalty region.
OptimizationReport optimize_functional(FunctionalKind kind, int degree,
                                       const OptimizerConfig& config,
                                       const std::vector<EvenPolynomial>& seed_polys = {});

}  // namespace fopt
