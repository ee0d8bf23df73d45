#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fopt/errors.hpp"
#include "fopt/praxis.hpp"

using fopt::EvenPolynomial;
using fopt::FunctionalKind;
using fopt::MinimizeResult;
using fopt::OptimizationReport;
using fopt::OptimizerConfig;
using fopt::rat;

namespace {

OptimizerConfig config_for(int dimension) {
    OptimizerConfig cfg;
    cfg.dimension = dimension;
    cfg.step0 = 0.5;
    cfg.tol = 1e-11;
    cfg.max_evals = 20000;
    cfg.seed = 12345;
    return cfg;
}

double quadratic_bowl(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += (v - 1.0) * (v - 1.0);
    return s;
}

double diagonal_valley(const std::vector<double>& x) {
    return std::max(std::fabs(x[0]), std::fabs(x[1])) + std::fabs(x[0] - x[1]);
}

double rosenbrock(const std::vector<double>& x) {
    double a = 1.0 - x[0];
    double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
}

}  // namespace

TEST_CASE("smooth quadratic converges to the exact minimizer") {
    MinimizeResult res =
        fopt::principal_axis_minimize(quadratic_bowl, config_for(5), std::vector<double>(5, 0.0));
    for (double v : res.point) CHECK(std::fabs(v - 1.0) <= 1e-8);
    CHECK(res.value <= 1e-16);
    CHECK(res.evals <= 20000);
}

TEST_CASE("non-smooth diagonal valley reaches the kink minimizer") {
    MinimizeResult res = fopt::principal_axis_minimize(diagonal_valley, config_for(2),
                                                       std::vector<double>{-0.3, -0.3});
    CHECK(std::fabs(res.point[0]) <= 1e-6);
    CHECK(std::fabs(res.point[1]) <= 1e-6);
}

TEST_CASE("banana valley is solved within the eval budget") {
    OptimizerConfig cfg = config_for(2);
    cfg.max_evals = 10000;
    MinimizeResult res =
        fopt::principal_axis_minimize(rosenbrock, cfg, std::vector<double>{-1.2, 1.0});
    CHECK(res.value < 1e-8);
    CHECK(res.evals <= 10000);
}

TEST_CASE("result never exceeds the starting value and restarts do not regress") {
    std::vector<double> start{2.0, -3.0};
    OptimizerConfig cfg = config_for(2);
    MinimizeResult first = fopt::principal_axis_minimize(rosenbrock, cfg, start);
    CHECK(first.value <= rosenbrock(start));
    MinimizeResult second = fopt::principal_axis_minimize(rosenbrock, cfg, first.point);
    CHECK(second.value <= first.value + 1e-15);
}

TEST_CASE("identical seed and config give identical results") {
    OptimizerConfig cfg = config_for(3);
    cfg.seed = 99;
    std::vector<double> start{0.4, -1.0, 2.5};
    MinimizeResult a = fopt::principal_axis_minimize(quadratic_bowl, cfg, start);
    MinimizeResult b = fopt::principal_axis_minimize(quadratic_bowl, cfg, start);
    CHECK(a.value == b.value);
    CHECK(a.evals == b.evals);
    REQUIRE(a.point.size() == b.point.size());
    for (std::size_t i = 0; i < a.point.size(); ++i) CHECK(a.point[i] == b.point[i]);
}

TEST_CASE("argument validation") {
    OptimizerConfig cfg = config_for(0);
    CHECK_THROWS_AS(fopt::principal_axis_minimize(quadratic_bowl, cfg, {}),
                    fopt::OutOfRangeError);
    cfg = config_for(2);
    CHECK_THROWS_AS(fopt::principal_axis_minimize(quadratic_bowl, cfg, {1.0}),
                    fopt::OutOfRangeError);
    cfg.tol = 0.0;
    CHECK_THROWS_AS(fopt::principal_axis_minimize(quadratic_bowl, cfg, {1.0, 2.0}),
                    fopt::OutOfRangeError);

    OptimizerConfig opt;
    CHECK_THROWS_AS(fopt::optimize_functional(FunctionalKind::ep4, 3, opt),
                    fopt::OutOfRangeError);
    CHECK_THROWS_AS(fopt::optimize_functional(FunctionalKind::ep4, 26, opt),
                    fopt::OutOfRangeError);
    opt.starts = 0;
    CHECK_THROWS_AS(fopt::optimize_functional(FunctionalKind::ep4, 2, opt),
                    fopt::OutOfRangeError);
    opt = OptimizerConfig();
    CHECK_THROWS_AS(
        fopt::optimize_functional(FunctionalKind::ep4, 0, opt,
                                  {EvenPolynomial::parse("1,-1")}),
        fopt::OutOfRangeError);
}

TEST_CASE("degree-0 search lands on the exact one-dimensional value") {
    OptimizerConfig cfg;
    cfg.starts = 4;
    cfg.seed = 5;
    OptimizationReport rep = fopt::optimize_functional(FunctionalKind::ep1, 0, cfg);
    CHECK(rep.certified.value.contains(rat(4, 3)));
    CHECK(std::fabs(rep.best_value - 4.0 / 3.0) <= 1e-9);
    CHECK(rep.per_start_values.size() == 4);
}

TEST_CASE("degree-2 search certifies the published quality") {
    OptimizerConfig cfg;
    cfg.starts = 32;
    cfg.seed = 7;
    OptimizationReport rep = fopt::optimize_functional(FunctionalKind::ep4, 2, cfg);
    CHECK(rep.certified.certified_bound.to_double(MPFR_RNDD) >= 0.98214);
    CHECK(std::fabs(rep.best_value - rep.certified.certified_bound.to_double()) <= 1e-6);
    CHECK(rep.per_start_values.size() == 32);
    CHECK(rep.evals_used > 0);
}

TEST_CASE("seeded high-degree search never certifies worse than its seed") {
    EvenPolynomial p1 = EvenPolynomial::parse("1,-157/1000,69/10,-59,-152,815,200");
    OptimizerConfig cfg;
    cfg.starts = 8;
    cfg.seed = 11;
    OptimizationReport rep = fopt::optimize_functional(FunctionalKind::ep3, 12, cfg, {p1});
    CHECK(rep.certified.certified_bound.to_double(MPFR_RNDU) <= 1.077542);
    CHECK(rep.per_start_values.size() == 9);
    CHECK(std::fabs(rep.best_value - rep.certified.certified_bound.to_double()) <= 1e-6);
}

TEST_CASE("degree ladder: reseeding with a lower-degree winner cannot regress") {
    OptimizerConfig low;
    low.starts = 8;
    low.seed = 21;
    OptimizationReport d2 = fopt::optimize_functional(FunctionalKind::ep3, 2, low);

    std::vector<fopt::Rational> coeffs;
    for (double v : d2.best_coeffs) coeffs.push_back(fopt::rationalize(v, 1000000));
    EvenPolynomial winner(coeffs);

    OptimizerConfig high;
    high.starts = 4;
    high.seed = 22;
    OptimizationReport d12 = fopt::optimize_functional(FunctionalKind::ep3, 12, high, {winner});
    double low_bound = d2.certified.certified_bound.to_double(MPFR_RNDU);
    double high_bound = d12.certified.certified_bound.to_double(MPFR_RNDU);
    CHECK(high_bound <= low_bound + 1e-9);
}

TEST_CASE("optimization reports are deterministic") {
    OptimizerConfig cfg;
    cfg.starts = 6;
    cfg.seed = 31415;
    OptimizationReport a = fopt::optimize_functional(FunctionalKind::ep4, 2, cfg);
    OptimizationReport b = fopt::optimize_functional(FunctionalKind::ep4, 2, cfg);
    CHECK(a.best_value == b.best_value);
    CHECK(a.evals_used == b.evals_used);
    REQUIRE(a.best_coeffs.size() == b.best_coeffs.size());
    for (std::size_t i = 0; i < a.best_coeffs.size(); ++i)
        CHECK(a.best_coeffs[i] == b.best_coeffs[i]);
    REQUIRE(a.per_start_values.size() == b.per_start_values.size());
    for (std::size_t i = 0; i < a.per_start_values.size(); ++i)
        CHECK(a.per_start_values[i] == b.per_start_values[i]);
}
