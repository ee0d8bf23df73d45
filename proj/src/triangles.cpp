#include "fopt/triangles.hpp"

#include <algorithm>

#include "fopt/errors.hpp"
#include "fopt/trig.hpp"

namespace fopt {

namespace {

const Rational kFourThirds(4, 3);

void check_delta_range(const Rational& Delta) {
    if (Delta < kFourThirds || Delta > 2)
        throw OutOfRangeError("Delta must lie in [4/3, 2]");
}

// Auxiliary branch polynomials of the general-Delta bounds.
Rational p_aux(const Rational& D, const Rational& x) {
    Rational x1 = x + 1;
    return x1 * (D * D * D * x1 * x1 - 12 * D * D + 12 * D - 4) / (12 * D);
}

Rational q_aux(const Rational& D, const Rational& x) {
    return D * D * x * x * x / 12 + x * (1 - D - Rational(1) / (3 * D));
}

Rational r_aux(const Rational& D, const Rational& x) {
    return upper_split_correction(D)(x);
}

Rational u_aux(const Rational& D, const Rational& x) {
    Rational x1 = x + 1;
    return (-D * D * D * x1 * x1 * x1 / 4 + 3 * D * D * (x * x + 1) - 3 * D * x1 + 2 * x) /
           (6 * D);
}

Rational v_aux(const Rational& D, const Rational& x) {
    Rational x1 = x - 1;
    return x1 * (3 * D * D * x1 + 4) / (12 * D);
}

Rational w_aux(const Rational& D, const Rational& x) {
    return lower_tail_gain(D)(x);
}

// First branch of the closed-form lower bound for ell >= 2.
Rational lower_branch_one(const Rational& ell) {
    Rational x = fractional_part(ell / 2);
    Rational v = 11 * (ell - 2) / 12 + x * x / 2 - 5 * x / 6 + Rational(1, 3);
    Rational inner = -x * x + 6 * x - 3;
    if (inner > 0) v += x / 6 * inner;
    return v;
}

Rational lower_branch_two(const Rational& ell) { return ell / 2 - Rational(2) / (3 * ell); }

// Main expression of the closed-form upper bound (valid for all ell > 0).
Rational upper_main_expr(const Rational& ell) {
    Rational x = fractional_part(ell / 2);
    Rational v = 13 * (ell + 2) / 12 + x * x * x / 3 - 7 * x / 6;
    Rational inner = 2 * x * x * x - 6 * x * x - 6 * x + 5;
    if (inner > 0) v -= inner / 6;
    return v;
}

Rational bump_value(const TriangleBump& b, const Rational& a) {
    Rational t = 1 - abs_of(a - b.center) / b.half_width;
    if (t <= 0) return Rational(0);
    return b.height_scale * t;
}

Rational config_sum(const TriangleConfig& cfg, const Rational& a) {
    Rational s(0);
    for (const auto& b : cfg.bumps) s += bump_value(b, a);
    return s;
}

}  // namespace

Rational rho_K(const Rational& delta, const Rational& Delta) {
    if (delta <= 0 || delta > Delta) throw OutOfRangeError("rho_K needs 0 < delta <= Delta");
    if (delta <= 1) return 1 + delta * delta / 3;
    return delta + Rational(1) / (3 * delta);
}

Enclosure upper_bound_closed(const Rational& ell) {
    if (ell <= 0) throw OutOfRangeError("upper_bound_closed needs ell > 0");
    Rational main = upper_main_expr(ell);
    if (ell >= 1) return Enclosure::from_rational(main);

    // c = max{ (ell^2/6)^(1/3), ell/(2-ell) }, then (1+c)(1 + ell^2 (1+c)^2 / (12 c^2))
    RationalInterval root = cbrt_of(ell * ell / 6, 80);
    Rational alt = ell / (2 - ell);
    RationalInterval c{std::max(root.lo, alt), std::max(root.hi, alt)};
    Enclosure ce = c.to_enclosure();
    Enclosure one = Enclosure::from_rational(Rational(1));
    Enclosure onec = one + ce;
    Enclosure ell2 = Enclosure::from_rational(ell * ell);
    Enclosure twelve = Enclosure::from_rational(Rational(12));
    Enclosure candidate = onec * (one + ell2 * onec * onec / (twelve * ce * ce));

    Enclosure main_e = Enclosure::from_rational(main);
    BigFloat lo = std::min(main_e.lo, candidate.lo);
    BigFloat hi = std::min(main_e.hi, candidate.hi);
    return Enclosure(std::move(lo), std::move(hi));
}

Rational lower_bound_closed(const Rational& ell) {
    if (ell <= 0) throw OutOfRangeError("lower_bound_closed needs ell > 0");
    if (ell <= 2) {
        Rational v = ell - 1 - ell * ell / 12;
        return v > 0 ? v : Rational(0);
    }
    return std::max(lower_branch_one(ell), lower_branch_two(ell));
}

Rational general_upper(const Rational& ell, const Rational& Delta) {
    check_delta_range(Delta);
    if (ell <= 0) throw OutOfRangeError("general_upper needs ell > 0");
    Rational x = fractional_part(ell / Delta);
    Rational base = (Rational(1) / (3 * Delta * Delta) + 1) * (Delta + ell);
    if (x < 2 / Delta - 1) return base + p_aux(Delta, x);
    Rational r = r_aux(Delta, x);
    return base + q_aux(Delta, x) - (r > 0 ? r : Rational(0));
}

Rational general_lower(const Rational& ell, const Rational& Delta) {
    check_delta_range(Delta);
    if (ell < Delta) throw OutOfRangeError("general_lower needs ell >= Delta");
    Rational x = fractional_part(ell / Delta);
    Rational base = (1 - Rational(1) / (3 * Delta * Delta)) * (ell - Delta);
    if (x < 2 / Delta - 1) return base + u_aux(Delta, x);
    Rational w = w_aux(Delta, x);
    return base + v_aux(Delta, x) + (w > 0 ? w : Rational(0));
}

PolyQ upper_split_correction(const Rational& Delta) {
    check_delta_range(Delta);
    const Rational& D = Delta;
    return PolyQ({D / 2 - Rational(1) / (3 * D), 1 - D, -D / 2, D * D / 12});
}

PolyQ lower_tail_gain(const Rational& Delta) {
    check_delta_range(Delta);
    const Rational& D = Delta;
    return PolyQ({Rational(0), Rational(-1, 2), D / 2, -D * D / 24});
}

double lower_crossover_ell() {
    static const double value = [] {
        Rational lo(7, 2), hi(15, 4);  // branch two dominates at lo, branch one at hi
        for (int i = 0; i < 80; ++i) {
            Rational mid = (lo + hi) / 2;
            if (lower_branch_one(mid) - lower_branch_two(mid) > 0) hi = mid;
            else lo = mid;
        }
        return to_double((lo + hi) / 2);
    }();
    return value;
}

TriangleConfig build_config(const Rational& ell, const Rational& Delta, ConfigSide side) {
    check_delta_range(Delta);
    TriangleConfig cfg;
    cfg.ell = ell;
    cfg.delta = Delta;
    cfg.side = side;
    cfg.rho_sum = 0;
    cfg.objective_sum = 0;

    if (side == ConfigSide::upper) {
        if (ell <= 0) throw OutOfRangeError("build_config upper needs ell > 0");
        Rational x = fractional_part(ell / Delta);
        Rational f = floor_rational(ell / Delta);

        // Branch-minimum choice of (n, delta): fewer big triangles when the
        // alternative is at least as good (exact r-sign test).
        Rational n_big, half;
        if (x == 0) {
            n_big = f;
            half = Delta / 2;
        } else if (x < 2 / Delta - 1 || r_aux(Delta, x) > 0) {
            n_big = f;
            half = Delta / 2 * (1 + x);
        } else {
            n_big = f + 1;
            half = Delta / 2 * x;
        }

        long n = static_cast<long>(n_big.get_num().get_si());
        Rational hscale = half / Delta;
        cfg.bumps.push_back({half, hscale, Rational(0)});
        for (long j = 2; j <= n + 1; ++j)
            cfg.bumps.push_back({Delta, Rational(1), half + Delta * (j - 2)});
        cfg.bumps.push_back({half, hscale, ell});
        cfg.rho_sum = n_big * rho_K(Delta, Delta) + 2 * hscale * rho_K(half, Delta);
        return cfg;
    }

    if (ell <= 0) throw OutOfRangeError("build_config lower needs ell > 0");
    if (ell < Delta) {
        // single bump; objective clamps at the trivial bound zero
        Rational half = ell / 2;
        cfg.bumps.push_back({half, Rational(1), half});
        Rational obj = 2 * half - rho_K(half, Delta);
        cfg.objective_sum = obj > 0 ? obj : Rational(0);
        return cfg;
    }

    Rational x = fractional_part(ell / Delta);
    Rational f = floor_rational(ell / Delta);
    long n = static_cast<long>(f.get_num().get_si()) - 1;
    Rational d1 = Delta / 2 * (1 + x);
    Rational d2 = Delta / 2 * x;

    for (long j = 1; j <= n; ++j) cfg.bumps.push_back({Delta, Rational(1), Delta * j});
    cfg.bumps.push_back({d1, d1 / Delta, Delta * n + d1});
    cfg.objective_sum = Rational(n) * (2 * Delta - rho_K(Delta, Delta)) +
                        d1 / Delta * (2 * d1 - rho_K(d1, Delta));

    // include the last small bump only when its objective term is positive:
    // (Delta x)^2 - 12 (Delta x) + 12 < 0
    if (d2 > 0) {
        Rational y = Delta * x;
        if (y * y - 12 * y + 12 < 0) {
            cfg.bumps.push_back({d2, d2 / Delta, Delta * (n + 1) + d2});
            cfg.objective_sum += d2 / Delta * (2 * d2 - rho_K(d2, Delta));
        }
    }
    return cfg;
}

ValidationReport validate_config(const TriangleConfig& cfg, long grid) {
    if (grid < 1000) throw OutOfRangeError("validate_config needs grid >= 1000");
    ValidationReport report{true, std::nullopt, 0};

    auto fail = [&](const Rational& witness) {
        report.feasible = false;
        report.witness = witness;
    };

    if (cfg.side == ConfigSide::lower) {
        // exact vanishing outside [0, ell]: every support must be contained
        for (const auto& b : cfg.bumps) {
            ++report.points_checked;
            Rational left = b.center - b.half_width;
            Rational right = b.center + b.half_width;
            if (left < 0) {
                fail((left + std::min(Rational(0), right)) / 2);
                return report;
            }
            if (right > cfg.ell) {
                fail((right + std::max(cfg.ell, left)) / 2);
                return report;
            }
        }
    }

    std::vector<Rational> points{Rational(0), cfg.ell};
    for (const auto& b : cfg.bumps) {
        points.push_back(b.center - b.half_width);
        points.push_back(b.center);
        points.push_back(b.center + b.half_width);
    }
    for (long k = 0; k <= grid; ++k) points.push_back(cfg.ell * Rational(k, grid));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    for (const auto& a : points) {
        if (a < 0 || a > cfg.ell) continue;
        ++report.points_checked;
        Rational s = config_sum(cfg, a);
        if (cfg.side == ConfigSide::upper ? s < 1 : s > 1) {
            fail(a);
            return report;
        }
    }
    return report;
}

}  // namespace fopt
