#include "fopt/praxis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <utility>

#include "fopt/constants.hpp"
#include "fopt/errors.hpp"

namespace fopt {

namespace {

constexpr double kPiD = 3.141592653589793238462643383279502884;
constexpr double kGoldenRatioInv = 0.618033988749894848;
constexpr double kBracketGrow = 1.618033988749894848;

struct Budget {
    long used = 0;
    long cap = 0;
    bool spent() const { return used >= cap; }
};

struct Probe {
    double t = 0.0;
    double f = 0.0;
};

// Local minimization on a bracket [a, b] whose interior point `best` satisfies
// f(best) <= f(a), f(b). A parabolic step is taken only when the interpolant
// lands inside the bracket and moves less than half the step before last;
// otherwise golden section. The safeguard keeps kinked objectives safe.
Probe brent_1d(const std::function<double(double)>& phi, double a, double b,
               Probe best, double tol_t, Budget& budget) {
    double x = best.t, w = x, v = x;
    double fx = best.f, fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < 160 && !budget.spent(); ++iter) {
        double m = 0.5 * (a + b);
        double tol1 = tol_t + 1e-12 * std::fabs(x);
        double tol2 = 2.0 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;
        bool golden = true;
        if (std::fabs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            double e_prev = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * e_prev) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
                golden = false;
            }
        }
        if (golden) {
            e = (x < m) ? b - x : a - x;
            d = (1.0 - kGoldenRatioInv) * e;
        }
        double u = (std::fabs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        double fu = phi(u);
        ++budget.used;
        if (fu <= fx) {
            if (u < x) b = x;
            else a = x;
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) a = u;
            else b = u;
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    return {x, fx};
}

// Minimizes phi given phi(0) = f0. Brackets by golden expansion on whichever
// side descends, then polishes with brent_1d. Never returns an uphill point.
Probe line_minimize(const std::function<double(double)>& phi, double f0,
                    double step, double tol_t, Budget& budget) {
    Probe best{0.0, f0};
    if (budget.spent() || !(step > 0.0)) return best;

    double fp = phi(step);
    ++budget.used;

    double dir = 1.0;
    double f_inner = fp;
    if (fp >= f0) {
        if (budget.spent()) return best;
        double fm = phi(-step);
        ++budget.used;
        if (fm >= f0) {
            // valley already bracketed around 0
            return brent_1d(phi, -step, step, best, tol_t, budget);
        }
        dir = -1.0;
        f_inner = fm;
    }

    // descending at t = dir*step: expand until the value rises again
    double t0 = 0.0;
    double t1 = dir * step, f1 = f_inner;
    for (int grow = 0; grow < 64; ++grow) {
        if (budget.spent()) return {t1, f1};
        double t2 = t1 + kBracketGrow * (t1 - t0);
        double f2 = phi(t2);
        ++budget.used;
        if (f2 >= f1) {
            double lo = std::min(t0, t2), hi = std::max(t0, t2);
            return brent_1d(phi, lo, hi, {t1, f1}, tol_t, budget);
        }
        t0 = t1;
        t1 = t2;
        f1 = f2;
    }
    return {t1, f1};  // runaway descent direction: report the best point seen
}

// (0,1) uniform from the top 53 bits; identical across platforms, unlike
// std::uniform_real_distribution.
double unit_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

double gaussian(std::mt19937_64& rng) {
    double u1 = unit_open(rng);
    double u2 = unit_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPiD * u2);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Modified Gram-Schmidt; rank lost to near-parallel rows is refilled from
// coordinate axes, so the result is always a full orthonormal basis.
void reorthogonalize(std::vector<std::vector<double>>& axes) {
    const std::size_t n = axes.size();
    std::vector<std::vector<double>> ortho;
    ortho.reserve(n);
    auto try_add = [&](std::vector<double> v) {
        for (const auto& u : ortho) {
            double c = dot(v, u);
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * u[k];
        }
        double nn = norm(v);
        if (nn < 1e-10) return;
        for (double& vk : v) vk /= nn;
        ortho.push_back(std::move(v));
    };
    for (auto& row : axes) {
        if (ortho.size() == n) break;
        try_add(std::move(row));
    }
    for (std::size_t j = 0; ortho.size() < n && j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        try_add(std::move(e));
    }
    if (ortho.size() < n) {  // cannot happen with exact arithmetic; reset anyway
        ortho.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t j = 0; j < n; ++j) ortho[j][j] = 1.0;
    }
    axes = std::move(ortho);
}

}  // namespace

MinimizeResult principal_axis_minimize(const Objective& objective,
                                       const OptimizerConfig& config,
                                       const std::vector<double>& start) {
    const int n = config.dimension;
    if (n < 1) throw OutOfRangeError("principal_axis_minimize: dimension must be >= 1");
    if (!(config.tol > 0.0) || !(config.step0 > 0.0))
        throw OutOfRangeError("principal_axis_minimize: tol and step0 must be positive");
    if (static_cast<int>(start.size()) != n)
        throw OutOfRangeError("principal_axis_minimize: start size != dimension");

    Budget budget{0, std::max(1L, config.max_evals)};
    std::vector<std::vector<double>> axes(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) axes[i][i] = 1.0;

    std::vector<double> x = start;
    double fx = objective(x);
    ++budget.used;

    auto line_along = [&](const std::vector<double>& u, double step) {
        auto phi = [&](double t) {
            std::vector<double> y(x);
            for (int k = 0; k < n; ++k) y[k] += t * u[k];
            return objective(y);
        };
        Probe p = line_minimize(phi, fx, step, config.tol * 0.5, budget);
        if (p.f < fx && p.t != 0.0) {
            for (int k = 0; k < n; ++k) x[k] += p.t * u[k];
            fx = p.f;
        }
    };

    double step = config.step0;
    // stalls on a kinked valley that no current axis can descend are retried
    // with a fresh seeded orthonormal basis before terminating
    std::mt19937_64 stall_rng(config.seed ^ 0xD1B54A32D192ED03ULL);
    int stall_retries = 2;
    for (long sweep = 0; !budget.spent(); ++sweep) {
        std::vector<double> x0 = x;
        int big_i = 0;
        double big_drop = -1.0;
        for (int i = 0; i < n && !budget.spent(); ++i) {
            double f_before = fx;
            line_along(axes[i], step);
            if (f_before - fx > big_drop) {
                big_drop = f_before - fx;
                big_i = i;
            }
        }
        std::vector<double> d(n);
        for (int k = 0; k < n; ++k) d[k] = x[k] - x0[k];
        double dn = norm(d);
        if (dn < config.tol) {
            if (stall_retries == 0) break;
            --stall_retries;
            for (auto& row : axes)
                for (double& v : row) v = gaussian(stall_rng);
            reorthogonalize(axes);
            step = config.step0;
            continue;
        }
        stall_retries = 2;
        for (double& dk : d) dk /= dn;
        // replace the axis of largest decrease by the net sweep displacement
        axes.erase(axes.begin() + big_i);
        axes.push_back(std::move(d));
        if (!budget.spent()) line_along(axes[static_cast<std::size_t>(n) - 1], step);
        if ((sweep + 1) % n == 0) reorthogonalize(axes);
        step = std::min(config.step0, std::max(dn, config.tol * 4.0));
    }

    return {std::move(x), fx, budget.used};
}

namespace {

// Golden-section minimization of fn on [a, b]; returns the smallest value seen.
double golden_min(const std::function<double(double)>& fn, double a, double b) {
    double c = b - kGoldenRatioInv * (b - a);
    double d = a + kGoldenRatioInv * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int i = 0; i < 64; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGoldenRatioInv * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGoldenRatioInv * (b - a);
            fd = fn(d);
        }
    }
    return std::min(fc, fd);
}

// Float-mode functional evaluation: exact bilinear matrices and basis
// cross-correlations are precomputed once and then evaluated in doubles.
struct FloatPipeline {
    FunctionalKind kind = FunctionalKind::ep1;
    BoundDirection dir = BoundDirection::upper_bound_inf;
    int n = 0;
    double c0 = 0.0;
    double penalty = 0.0;
    std::vector<std::vector<double>> amat, bmat;  // numerator = a'Aa + c0 a'Ba
    std::vector<std::vector<std::vector<double>>> qbasis;  // q = sum a_k a_l qbasis[k][l]
    std::vector<double> gweights;  // int x^{2k} over the window
    std::vector<double> nodes;     // Chebyshev-Lobatto scan grid on [0,1]

    std::vector<double> build_q(const std::vector<double>& a) const {
        std::vector<double> qc(static_cast<std::size_t>(2 * (n - 1) * 2 + 2), 0.0);
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                double w = a[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(l)];
                if (w == 0.0) continue;
                const auto& base = qbasis[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                for (std::size_t i = 0; i < base.size(); ++i) qc[i] += w * base[i];
            }
        }
        return qc;
    }

    static double horner(const std::vector<double>& c, double x) {
        double s = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
        return s;
    }

    double quad_form(const std::vector<std::vector<double>>& mtx,
                     const std::vector<double>& a) const {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s += mtx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                     a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
        return s;
    }

    // scanned denominator; pair_max = true takes max(|q(t)|+|q(1-t)|),
    // otherwise min(|q(t)+q(1-t)|)
    double scan_denominator(const std::vector<double>& qc, bool pair_max) const {
        const std::size_t m = nodes.size();
        std::vector<double> qv(m);
        for (std::size_t j = 0; j < m; ++j) qv[j] = horner(qc, nodes[j]);
        std::size_t arg = 0;
        double best = pair_max ? -1.0 : std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            double mirror = qv[m - 1 - j];  // nodes are symmetric about 1/2
            double val = pair_max ? std::fabs(qv[j]) + std::fabs(mirror)
                                  : std::fabs(qv[j] + mirror);
            if (pair_max ? (val > best) : (val < best)) {
                best = val;
                arg = j;
            }
        }
        double lo = nodes[arg == 0 ? 0 : arg - 1];
        double hi = nodes[arg + 1 >= m ? m - 1 : arg + 1];
        auto f = [&](double t) {
            double val = pair_max ? std::fabs(horner(qc, t)) + std::fabs(horner(qc, 1.0 - t))
                                  : std::fabs(horner(qc, t) + horner(qc, 1.0 - t));
            return pair_max ? -val : val;
        };
        double refined = golden_min(f, lo, hi);
        return pair_max ? std::max(best, -refined) : std::min(best, refined);
    }

    // functional value; feasible=false on zero denominator or g(0) <= 0
    double ratio(const std::vector<double>& a, bool& feasible) const {
        feasible = false;
        std::vector<double> qc = build_q(a);
        bool pair_max = !(kind == FunctionalKind::ep1 || kind == FunctionalKind::ep3);
        double den = scan_denominator(qc, pair_max);
        if (kind == FunctionalKind::ep3) den *= 2.0;
        if (!(den > 1e-300) || !std::isfinite(den)) return 0.0;
        if (dir == BoundDirection::lower_bound_sup) {
            double s = dot(gweights, a);
            if (!(s * s > 0.0)) return 0.0;
        }
        double num = quad_form(amat, a) + c0 * quad_form(bmat, a);
        double r = num / den;
        if (!std::isfinite(r)) return 0.0;
        feasible = true;
        return r;
    }

    // minimized objective: the ratio for inf kinds, its negation for sup kinds
    double objective(const std::vector<double>& a) const {
        bool ok = false;
        double r = ratio(a, ok);
        if (!ok) return penalty;
        return dir == BoundDirection::upper_bound_inf ? r : -r;
    }
};

FloatPipeline make_pipeline(FunctionalKind kind, int degree, double penalty) {
    FloatPipeline pipe;
    pipe.kind = kind;
    pipe.dir = direction_of(kind);
    pipe.n = degree / 2 + 1;
    pipe.penalty = penalty;
    pipe.c0 = compute_c0(64).value.mid();

    BilinearNumerator bn = bilinear_numerator_matrix(kind, degree);
    auto to_double_matrix = [&](const std::vector<std::vector<Rational>>& src) {
        std::vector<std::vector<double>> out(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            out[i].reserve(src[i].size());
            for (const Rational& r : src[i]) out[i].push_back(to_double(r));
        }
        return out;
    };
    pipe.amat = to_double_matrix(bn.constant_matrix);
    pipe.bmat = to_double_matrix(bn.c0_matrix);

    pipe.qbasis.assign(static_cast<std::size_t>(pipe.n), {});
    for (int k = 0; k < pipe.n; ++k) {
        pipe.qbasis[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(pipe.n), {});
        for (int l = 0; l < pipe.n; ++l) {
            PolyQ cc = crosscorrelate(PolyQ::monomial(Rational(1), 2 * static_cast<std::size_t>(k)),
                                      PolyQ::monomial(Rational(1), 2 * static_cast<std::size_t>(l)));
            std::vector<double> dc;
            dc.reserve(cc.coeffs().size());
            for (const Rational& r : cc.coeffs()) dc.push_back(to_double(r));
            pipe.qbasis[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = std::move(dc);
        }
    }

    pipe.gweights.resize(static_cast<std::size_t>(pipe.n));
    for (int k = 0; k < pipe.n; ++k)
        pipe.gweights[static_cast<std::size_t>(k)] =
            1.0 / ((2.0 * k + 1.0) * std::pow(4.0, k));

    const std::size_t grid = 2048;
    pipe.nodes.resize(grid);
    for (std::size_t j = 0; j < grid; ++j)
        pipe.nodes[j] = 0.5 * (1.0 - std::cos(kPiD * static_cast<double>(j) /
                                              static_cast<double>(grid - 1)));
    pipe.nodes.front() = 0.0;
    pipe.nodes.back() = 1.0;
    return pipe;
}

}  // namespace

OptimizationReport optimize_functional(FunctionalKind kind, int degree,
                                       const OptimizerConfig& config,
                                       const std::vector<EvenPolynomial>& seed_polys) {
    if (degree < 0 || degree % 2 != 0)
        throw OutOfRangeError("optimize_functional: degree must be a nonnegative even integer");
    if (degree > 24) throw OutOfRangeError("optimize_functional: degree cap is 24");
    if (config.starts < 1) throw OutOfRangeError("optimize_functional: starts must be >= 1");
    if (!(config.tol > 0.0) || !(config.step0 > 0.0))
        throw OutOfRangeError("optimize_functional: tol and step0 must be positive");

    const int n = degree / 2 + 1;
    const FloatPipeline pipe = make_pipeline(kind, degree, config.penalty);
    Objective objective = [&pipe](const std::vector<double>& a) { return pipe.objective(a); };

    OptimizerConfig inner = config;
    inner.dimension = n;

    // start points: config.starts random draws, then one per seed polynomial
    std::vector<std::vector<double>> starts;
    starts.reserve(static_cast<std::size_t>(config.starts) + seed_polys.size());
    for (int j = 0; j < config.starts; ++j) {
        std::mt19937_64 rng(config.seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(j) + 1));
        std::vector<double> a(static_cast<std::size_t>(n));
        for (double& ak : a) ak = gaussian(rng);
        a[0] = std::fabs(a[0]);
        if (a[0] == 0.0) a[0] = 0.5;
        starts.push_back(std::move(a));
    }
    for (const EvenPolynomial& seed : seed_polys) {
        if (seed.degree() > degree)
            throw OutOfRangeError("optimize_functional: seed degree exceeds requested degree");
        std::vector<double> a(static_cast<std::size_t>(n), 0.0);
        const auto& ec = seed.even_coeffs();
        for (std::size_t k = 0; k < ec.size(); ++k) a[k] = to_double(ec[k]);
        starts.push_back(std::move(a));
    }

    // independent starts; per-start results are merged by index, so the thread
    // schedule cannot affect the report
    std::vector<MinimizeResult> results(starts.size());
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(starts.size())));
    if (workers <= 1) {
        for (std::size_t j = 0; j < starts.size(); ++j)
            results[j] = principal_axis_minimize(objective, inner, starts[j]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t j = w; j < starts.size(); j += workers)
                    results[j] = principal_axis_minimize(objective, inner, starts[j]);
            });
        }
        for (auto& th : pool) th.join();
    }

    OptimizationReport rep;
    rep.per_start_values.reserve(results.size());
    bool any_feasible = false;
    for (const MinimizeResult& r : results) {
        rep.evals_used += r.evals;
        if (r.value >= config.penalty) {
            rep.per_start_values.push_back(config.penalty);
        } else {
            any_feasible = true;
            rep.per_start_values.push_back(
                pipe.dir == BoundDirection::upper_bound_inf ? r.value : -r.value);
        }
    }
    if (!any_feasible && seed_polys.empty()) throw NoFeasibleCandidateError();

    // candidate pool: optimizer outputs ordered by objective, plus each seed
    // verbatim (checked exactly from its rational coefficients, so a seeded run
    // never certifies worse than its best seed)
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < results.size(); ++j)
        if (results[j].value < config.penalty) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (results[a].value != results[b].value) return results[a].value < results[b].value;
        return a < b;
    });

    const Enclosure c0 = compute_c0(std::max(64u, precision_bits())).value;
    auto better = [&](const BoundCertificate& a, const BoundCertificate& b) {
        return pipe.dir == BoundDirection::upper_bound_inf
                   ? a.certified_bound < b.certified_bound
                   : a.certified_bound > b.certified_bound;
    };

    std::optional<BoundCertificate> best_cert;
    std::vector<double> best_pt;
    for (std::size_t j : order) {
        std::vector<Rational> rc(static_cast<std::size_t>(n));
        bool finite = true;
        for (int k = 0; k < n; ++k) {
            double v = results[j].point[static_cast<std::size_t>(k)];
            if (!std::isfinite(v)) {
                finite = false;
                break;
            }
            rc[static_cast<std::size_t>(k)] = rationalize(v, 1000000);
        }
        if (!finite) continue;
        try {
            BoundCertificate cert = eval_functional(kind, EvenPolynomial(rc), c0);
            best_cert = std::move(cert);
            best_pt = results[j].point;
            break;  // candidates are objective-sorted; first success wins
        } catch (const Error&) {
            continue;
        }
    }
    for (const EvenPolynomial& seed : seed_polys) {
        try {
            BoundCertificate cert = eval_functional(kind, seed, c0);
            std::vector<double> pt(static_cast<std::size_t>(n), 0.0);
            const auto& ec = seed.even_coeffs();
            for (std::size_t k = 0; k < ec.size(); ++k) pt[k] = to_double(ec[k]);
            if (!best_cert || better(cert, *best_cert)) {
                best_cert = std::move(cert);
                best_pt = std::move(pt);
            }
        } catch (const Error&) {
            continue;
        }
    }
    if (!best_cert) throw NoFeasibleCandidateError();

    bool ok = false;
    double float_value = pipe.ratio(best_pt, ok);
    rep.best_value = ok ? float_value : best_cert->certified_bound.to_double();
    rep.best_coeffs = std::move(best_pt);
    rep.certified = std::move(*best_cert);
    return rep;
}

}  // namespace fopt
