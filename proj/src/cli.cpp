#include "fopt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fopt/constants.hpp"
#include "fopt/errors.hpp"
#include "fopt/functionals.hpp"
#include "fopt/praxis.hpp"
#include "fopt/triangles.hpp"

namespace fopt {

namespace {

using nlohmann::json;

json enclosure_json(const Enclosure& e) {
    return json::array({e.lo_double(), e.hi_double()});
}

json certificate_json(const BoundCertificate& cert) {
    json j;
    j["direction"] = cert.direction == BoundDirection::upper_bound_inf
                         ? "upper_bound_inf"
                         : "lower_bound_sup";
    if (cert.numerator_parts.c0_coeff == 0)
        j["numerator"] = to_string(cert.numerator_parts.constant_part);
    else
        j["numerator"] = enclosure_json(cert.numerator);
    j["numerator_parts"] = {{"constant", to_string(cert.numerator_parts.constant_part)},
                            {"c0_coeff", to_string(cert.numerator_parts.c0_coeff)}};
    j["denominator"] = enclosure_json(cert.denominator);
    j["value"] = enclosure_json(cert.value);
    // round toward the safe side of the claimed inequality
    j["certified_bound"] = cert.direction == BoundDirection::upper_bound_inf
                               ? cert.certified_bound.to_double(MPFR_RNDU)
                               : cert.certified_bound.to_double(MPFR_RNDD);
    return j;
}

json config_json(const TriangleConfig& cfg, const ValidationReport& vr) {
    json bumps = json::array();
    for (const TriangleBump& b : cfg.bumps)
        bumps.push_back({{"center", to_string(b.center)},
                         {"half_width", to_string(b.half_width)},
                         {"height_scale", to_string(b.height_scale)}});
    json v;
    v["feasible"] = vr.feasible;
    v["points_checked"] = vr.points_checked;
    v["witness"] = vr.witness ? json(to_string(*vr.witness)) : json(nullptr);
    return {{"bumps", bumps},
            {"side", cfg.side == ConfigSide::upper ? "upper" : "lower"},
            {"ell", to_string(cfg.ell)},
            {"delta", to_string(cfg.delta)},
            {"rho_sum", to_string(cfg.rho_sum)},
            {"objective_sum", to_string(cfg.objective_sum)},
            {"validation", v}};
}

FunctionalKind parse_kind_or_throw(const std::string& text) {
    auto kind = parse_functional_kind(text);
    if (!kind) throw OutOfRangeError("unknown problem '" + text + "'");
    return *kind;
}

Enclosure current_c0() { return compute_c0(std::max(64u, precision_bits())).value; }

int do_eval(const std::string& problem, const std::string& poly, int m,
            std::ostream& out) {
    FunctionalKind kind = parse_kind_or_throw(problem);
    EvenPolynomial p = resolve_polynomial(poly);
    BoundCertificate cert = eval_functional(kind, p, current_c0(), m);
    json j = certificate_json(cert);
    j["problem"] = to_string(kind);
    j["poly"] = p.to_string();
    out << j.dump(2) << "\n";
    return 0;
}

int do_verify(bool as_json, std::ostream& out) {
    VerifyReport rep = run_verify_battery();
    if (as_json) {
        json checks = json::array();
        for (const VerifyCheck& c : rep.checks)
            checks.push_back({{"name", c.name},
                              {"claimed", c.claimed},
                              {"computed", enclosure_json(c.computed)},
                              {"pass", c.pass}});
        json j;
        j["all_pass"] = rep.all_pass;
        j["checks"] = checks;
        out << j.dump(2) << "\n";
    } else {
        for (const VerifyCheck& c : rep.checks) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s  %-24s computed=[%.12g, %.12g]  claimed %s\n",
                          c.pass ? "PASS" : "FAIL", c.name.c_str(),
                          c.computed.lo_double(), c.computed.hi_double(),
                          c.claimed.c_str());
            out << buf;
        }
        out << (rep.all_pass ? "all checks passed\n" : "some checks FAILED\n");
    }
    return rep.all_pass ? 0 : 1;
}

int do_triangle(const std::string& ell_s, const std::string& delta_s,
                const std::string& side, bool emit_config, std::ostream& out) {
    Rational ell = parse_rational(ell_s);
    bool want_upper = side != "lower";
    bool want_lower = side != "upper";
    json j;
    j["ell"] = to_string(ell);
    j["side"] = side;
    if (want_upper) j["upper"] = enclosure_json(upper_bound_closed(ell));
    if (want_lower) {
        Rational lo = lower_bound_closed(ell);
        j["lower"] = to_string(lo);
        j["lower_value"] = to_double(lo);
    }
    if (!delta_s.empty()) {
        Rational delta = parse_rational(delta_s);
        j["delta"] = to_string(delta);
        if (want_upper) {
            Rational gu = general_upper(ell, delta);
            j["upper_delta"] = to_string(gu);
            j["upper_delta_value"] = to_double(gu);
            if (emit_config) {
                TriangleConfig cfg = build_config(ell, delta, ConfigSide::upper);
                j["config_upper"] = config_json(cfg, validate_config(cfg, 1000));
            }
        }
        if (want_lower) {
            Rational gl = general_lower(ell, delta);
            j["lower_delta"] = to_string(gl);
            j["lower_delta_value"] = to_double(gl);
            if (emit_config) {
                TriangleConfig cfg = build_config(ell, delta, ConfigSide::lower);
                j["config_lower"] = config_json(cfg, validate_config(cfg, 1000));
            }
        }
    } else if (emit_config) {
        throw OutOfRangeError("--emit-config requires --delta");
    }
    out << j.dump(2) << "\n";
    return 0;
}

int do_optimize(const std::string& problem, int degree, int starts,
                std::uint64_t seed, long max_evals,
                const std::vector<std::string>& seed_polys, std::ostream& out) {
    FunctionalKind kind = parse_kind_or_throw(problem);
    OptimizerConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    cfg.max_evals = max_evals;
    std::vector<EvenPolynomial> seeds;
    seeds.reserve(seed_polys.size());
    for (const std::string& s : seed_polys) seeds.push_back(resolve_polynomial(s));
    OptimizationReport rep = optimize_functional(kind, degree, cfg, seeds);
    json j;
    j["problem"] = to_string(kind);
    j["degree"] = degree;
    j["starts"] = starts;
    j["seed"] = seed;
    j["best_coeffs"] = rep.best_coeffs;
    j["best_value"] = rep.best_value;
    j["evals_used"] = rep.evals_used;
    j["per_start_values"] = rep.per_start_values;
    j["certified"] = certificate_json(rep.certified);
    out << j.dump(2) << "\n";
    return 0;
}

int do_constants(unsigned bits, long dirichlet_n, std::ostream& out) {
    if (bits == 0) bits = precision_bits();
    C0Constant c = compute_c0(bits);
    json j;
    j["precision_bits"] = bits;
    j["c0"] = {{"critical_point", enclosure_json(c.critical_point)},
               {"value", enclosure_json(c.value)}};
    if (dirichlet_n > 0) {
        DirichletKernelMin d = dirichlet_min(dirichlet_n);
        j["dirichlet"] = {{"n", d.n},
                          {"m_n", enclosure_json(d.m_n)},
                          {"ratio", enclosure_json(d.ratio)}};
    }
    out << j.dump(2) << "\n";
    return 0;
}

int do_plot(const std::string& what, const std::string& poly,
            const std::string& min_s, const std::string& max_s,
            const std::string& step_s, std::ostream& out) {
    char buf[200];
    if (what == "bounds_vs_ell") {
        Rational maxv = parse_rational(max_s.empty() ? "10" : max_s);
        Rational step = parse_rational(step_s.empty() ? "0.01" : step_s);
        if (step <= 0 || maxv <= 0)
            throw OutOfRangeError("plot-data: step and max must be positive");
        out << "ell,upper,lower,conjecture\n";
        for (Rational ell = step; ell <= maxv; ell += step) {
            Enclosure u = upper_bound_closed(ell);
            Rational lo = lower_bound_closed(ell);
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", to_double(ell),
                          u.hi_double(), to_double(lo), to_double(ell));
            out << buf;
        }
        return 0;
    }
    if (poly.empty())
        throw OutOfRangeError("plot-data: --poly is required for ghat/hhat");
    Rational mn = parse_rational(min_s.empty() ? "-1.2" : min_s);
    Rational mx = parse_rational(max_s.empty() ? "1.2" : max_s);
    Rational step = parse_rational(step_s.empty() ? "0.01" : step_s);
    if (step <= 0 || mx < mn)
        throw OutOfRangeError("plot-data: need step > 0 and max >= min");
    EvenPolynomial p = resolve_polynomial(poly);
    out << "x,value\n";
    if (what == "ghat") {
        Autocorrelation ac = autocorrelate(p);
        for (Rational x = mn; x <= mx; x += step) {
            Rational ax = abs_of(x);
            Rational v = ax <= 1 ? ac.q(ax) : Rational(0);
            std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", to_double(x), to_double(v));
            out << buf;
        }
    } else {  // hhat
        PolyQ full = p.expand();
        for (Rational x = mn; x <= mx; x += step) {
            Rational v = abs_of(x) <= Rational(1, 2) ? full(x) : Rational(0);
            std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", to_double(x), to_double(v));
            out << buf;
        }
    }
    return 0;
}

}  // namespace

EvenPolynomial resolve_polynomial(const std::string& text) {
    static const std::map<std::string, std::string> aliases = {
        {"p1", "1,-157/1000,69/10,-59,-152,815,200"},
        {"p2", "5,-1"},
        {"p3", "1,-7/250,303/100,-152/5,-2743/10,2203,-3855"},
        {"q2", "250/47,-1"},
    };
    auto it = aliases.find(text);
    return EvenPolynomial::parse(it != aliases.end() ? it->second : text);
}

VerifyReport run_verify_battery() {
    VerifyReport rep;
    rep.all_pass = true;
    auto add = [&rep](std::string name, std::string claimed, Enclosure computed,
                      bool pass) {
        rep.checks.push_back({std::move(name), std::move(claimed), computed, pass});
        rep.all_pass = rep.all_pass && pass;
    };

    const Enclosure c0 = current_c0();
    const EvenPolynomial unit = EvenPolynomial::parse("1");

    // published polynomials against their claimed bounds
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep3, resolve_polynomial("p1"), c0);
        add("ep3_p1_upper", "< 1.077542", c.value,
            c.certified_bound.to_double(MPFR_RNDU) < 1.077542);
    }
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep4, resolve_polynomial("p2"), c0);
        add("ep4_p2_lower", "> 0.982144", c.value,
            c.certified_bound.to_double(MPFR_RNDD) > 0.982144);
    }
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep1, resolve_polynomial("p3"), c0);
        double hi = c.certified_bound.to_double(MPFR_RNDU);
        add("ep1_p3_upper", "< 1.330144", c.value, hi < 1.330144);
        add("ep1_p3_improves_old", "< 1.330174 (previous window)", c.value, hi < 1.330174);
    }
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep2, resolve_polynomial("q2"), c0);
        double lo = c.certified_bound.to_double(MPFR_RNDD);
        add("ep2_q2_lower", "> 0.927819", c.value, lo > 0.927819);
        add("ep2_q2_improves_old", "> 0.927818 (previous window)", c.value, lo > 0.927818);
    }

    // unit-polynomial candidates (the triangle-kernel values)
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep3, unit, c0);
        bool pass = c.numerator_parts.constant_part == Rational(13, 6) &&
                    c.numerator_parts.c0_coeff == 0 && c.value.contains(Rational(13, 12));
        add("ep3_unit", "13/12 exactly (numerator 13/6)", c.value, pass);
    }
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep1, unit, c0);
        add("ep1_unit", "4/3 exactly", c.value, c.value.contains(Rational(4, 3)));
    }
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep4, unit, c0);
        add("ep4_unit", "1 + c0/12 in (0.981897, 0.981898)", c.value,
            c.value.lo_double() > 0.981897 && c.value.hi_double() < 0.981898);
    }
    {
        BoundCertificate c = eval_functional(FunctionalKind::ep2, unit, c0);
        add("ep2_unit", "1 + c0/3 in (0.92758, 0.92759)", c.value,
            c.value.lo_double() > 0.92758 && c.value.hi_double() < 0.92759);
    }

    // constants
    {
        C0Constant cc = compute_c0(std::max(64u, precision_bits()));
        bool pass = cc.value.width() <= 1e-11 &&
                    std::fabs(cc.value.mid() - (-0.2172336282)) <= 5e-11;
        add("c0_digits", "-0.2172336282, width <= 1e-11", cc.value, pass);
    }
    {
        DirichletKernelMin d = dirichlet_min(1);
        bool pass = d.m_n.contains(Rational(-1)) && d.m_n.width() <= 1e-9;
        add("dirichlet_m1", "-1 within 1e-9", d.m_n, pass);
        double twoc0 = 2.0 * current_c0().mid();
        for (long n : {5L, 10L, 50L, 100L, 200L}) {
            DirichletKernelMin dk = dirichlet_min(n);
            bool ok = std::fabs(dk.ratio.mid() - twoc0) <= 3.0 / static_cast<double>(n);
            add("dirichlet_ratio_n" + std::to_string(n), "|m(n)/n - 2c0| <= 3/n",
                dk.ratio, ok);
        }
    }

    // seam continuity of the closed forms
    {
        const Rational eps = rat(1, 1000000000000L);
        const Rational tol = rat(1, 1000000000L);
        for (long l : {1L, 2L, 4L, 6L}) {
            Rational ell(l);
            Enclosure up = upper_bound_closed(ell + eps);
            Enclosure um = upper_bound_closed(ell - eps);
            double du = std::fabs(up.mid() - um.mid());
            Rational dl = abs_of(Rational(lower_bound_closed(ell + eps) -
                                          lower_bound_closed(ell - eps)));
            bool pass = du <= 1e-9 && dl <= tol;
            double dld = to_double(dl);
            add("seam_ell" + std::to_string(l), "branch jump <= 1e-9",
                Enclosure::from_doubles(std::min(du, dld), std::max(du, dld)), pass);
        }
        double cx = lower_crossover_ell();
        Rational lx(cx);
        Rational branch2 = lx / 2 - Rational(2) / Rational(lx * 3);
        Rational gap = abs_of(Rational(lower_bound_closed(lx) - branch2));
        add("lower_crossover", "branch gap <= 1e-9 near 3.609",
            Enclosure::from_doubles(cx, cx), gap <= tol);
    }

    return rep;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    if (const char* env = std::getenv("FOPT_PRECISION_BITS"); env && *env) {
        char* endp = nullptr;
        long bits = std::strtol(env, &endp, 10);
        if (endp == nullptr || *endp != '\0' || bits < 64 || bits > 16384) {
            err << "FOPT_PRECISION_BITS must be an integer in [64, 16384]\n";
            return 2;
        }
        set_precision_bits(static_cast<unsigned>(bits));
    }

    CLI::App app{"certified bounds for Fourier-extremal quotients and triangle constructions"};
    app.require_subcommand(1);

    std::string ev_problem, ev_poly;
    int ev_m = 3;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a functional at an even polynomial");
    eval_cmd->add_option("--problem", ev_problem, "ep1|ep2|ep3|ep4|j1|j2")->required();
    eval_cmd->add_option("--poly", ev_poly, "even coefficients \"a0,a1,...\" or alias p1|p2|p3|q2")
        ->required();
    eval_cmd->add_option("--m", ev_m, "shift-sum truncation for j kinds (default 3)");

    bool vf_json = false;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full reproduction battery");
    verify_cmd->add_flag("--json", vf_json, "emit JSON instead of the table");

    std::string tr_ell, tr_delta, tr_side = "both";
    bool tr_emit = false;
    CLI::App* triangle_cmd = app.add_subcommand("triangle", "closed-form interval-length bounds");
    triangle_cmd->add_option("--ell", tr_ell, "interval length (rational or decimal)")->required();
    triangle_cmd->add_option("--delta", tr_delta, "window size in [4/3, 2]");
    triangle_cmd->add_option("--side", tr_side, "upper|lower|both")
        ->check(CLI::IsMember({"upper", "lower", "both"}));
    triangle_cmd->add_flag("--emit-config", tr_emit, "print the bump configuration and validator verdict");

    std::string op_problem;
    int op_degree = 0;
    int op_starts = 16;
    std::uint64_t op_seed = 1;
    long op_max_evals = 20000;
    std::vector<std::string> op_seed_polys;
    CLI::App* optimize_cmd = app.add_subcommand("optimize", "search for good polynomials, then certify");
    optimize_cmd->add_option("--problem", op_problem, "ep1|ep2|ep3|ep4|j1|j2")->required();
    optimize_cmd->add_option("--degree", op_degree, "even degree <= 24")->required();
    optimize_cmd->add_option("--starts", op_starts, "random starts (default 16)");
    optimize_cmd->add_option("--seed", op_seed, "RNG seed (default 1)");
    optimize_cmd->add_option("--max-evals", op_max_evals, "evaluation budget per start");
    optimize_cmd->add_option("--seed-poly", op_seed_polys, "seed polynomial (repeatable; alias or coefficients)");

    unsigned co_bits = 0;
    long co_dirichlet = 0;
    CLI::App* constants_cmd = app.add_subcommand("constants", "emit certified constants");
    constants_cmd->add_option("--bits", co_bits, "c0 precision bits (default: global precision)");
    constants_cmd->add_option("--dirichlet", co_dirichlet, "also emit the kernel minimum for this n");

    std::string pd_what, pd_poly, pd_min, pd_max, pd_step;
    CLI::App* plot_cmd = app.add_subcommand("plot-data", "CSV series for the figures");
    plot_cmd->add_option("--what", pd_what, "bounds_vs_ell|ghat|hhat")
        ->required()
        ->check(CLI::IsMember({"bounds_vs_ell", "ghat", "hhat"}));
    plot_cmd->add_option("--poly", pd_poly, "polynomial for ghat/hhat");
    plot_cmd->add_option("--min", pd_min, "left end of the grid");
    plot_cmd->add_option("--max", pd_max, "right end of the grid");
    plot_cmd->add_option("--step", pd_step, "grid step");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto error_json = [&out, &err](const char* type, const std::exception& e) {
        json j;
        j["error"] = {{"type", type}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
    };

    try {
        if (eval_cmd->parsed()) return do_eval(ev_problem, ev_poly, ev_m, out);
        if (verify_cmd->parsed()) return do_verify(vf_json, out);
        if (triangle_cmd->parsed()) return do_triangle(tr_ell, tr_delta, tr_side, tr_emit, out);
        if (optimize_cmd->parsed())
            return do_optimize(op_problem, op_degree, op_starts, op_seed, op_max_evals,
                               op_seed_polys, out);
        if (constants_cmd->parsed()) return do_constants(co_bits, co_dirichlet, out);
        if (plot_cmd->parsed()) return do_plot(pd_what, pd_poly, pd_min, pd_max, pd_step, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const NoFeasibleCandidateError& e) {
        error_json("no_feasible_candidate", e);
        return 4;
    } catch (const IdenticallyZeroError& e) {
        error_json("identically_zero", e);
        return 3;
    } catch (const ZeroDenominatorError& e) {
        error_json("zero_denominator", e);
        return 3;
    } catch (const GZeroNotPositiveError& e) {
        error_json("g_zero_not_positive", e);
        return 3;
    } catch (const InfeasibleError& e) {
        error_json("infeasible", e);
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace fopt
