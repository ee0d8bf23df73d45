#include "fopt/extremize.hpp"

#include <algorithm>

#include "fopt/errors.hpp"

namespace fopt {

namespace {

// Divide by the positive integer-content scale only; roots, signs and variation
// counts are all preserved.
PolyQ primitive_keep_sign(const PolyQ& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& c : p.coeffs()) {
        mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational scale = Rational(den_lcm) / Rational(num_gcd);  // > 0
    return p * scale;
}

// Remainder of polynomial division a mod b (b nonzero).
PolyQ poly_rem(const PolyQ& a, const PolyQ& b) {
    PolyQ r = a;
    const long db = b.degree();
    const Rational lead_b = b.coeffs().back();
    while (!r.is_zero() && r.degree() >= db) {
        const Rational factor = r.coeffs().back() / lead_b;
        const std::size_t shift = static_cast<std::size_t>(r.degree() - db);
        r = r - b * PolyQ::monomial(factor, shift);
    }
    return r;
}

// Exact quotient a / b for known-exact divisions.
PolyQ poly_quotient(const PolyQ& a, const PolyQ& b) {
    PolyQ quotient;
    PolyQ r = a;
    const long db = b.degree();
    const Rational lead_b = b.coeffs().back();
    while (!r.is_zero() && r.degree() >= db) {
        const Rational factor = r.coeffs().back() / lead_b;
        const std::size_t shift = static_cast<std::size_t>(r.degree() - db);
        quotient = quotient + PolyQ::monomial(factor, shift);
        r = r - b * PolyQ::monomial(factor, shift);
    }
    return quotient;
}

PolyQ poly_gcd(PolyQ a, PolyQ b) {
    a = primitive_keep_sign(a);
    b = primitive_keep_sign(b);
    while (!b.is_zero()) {
        PolyQ r = primitive_keep_sign(poly_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

struct SturmChain {
    std::vector<PolyQ> seq;

    int variations(const Rational& x) const {
        int count = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sign_of(p(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }
};

// Classic Sturm chain: S0 = f, S1 = f', S_{k+1} = -rem(S_{k-1}, S_k); every element
// may be rescaled by a positive constant only.
SturmChain build_sturm(const PolyQ& f) {
    SturmChain chain;
    chain.seq.push_back(primitive_keep_sign(f));
    PolyQ d = f.derivative();
    if (d.is_zero()) return chain;
    chain.seq.push_back(primitive_keep_sign(d));
    while (chain.seq.back().degree() > 0) {
        PolyQ r = poly_rem(chain.seq[chain.seq.size() - 2], chain.seq.back());
        if (r.is_zero()) break;
        chain.seq.push_back(primitive_keep_sign(-r));
    }
    return chain;
}

// A split point strictly inside (a, b) where f does not vanish. The fallback points
// are pairwise distinct, so at most deg(f) of them can be roots.
Rational nonroot_split(const PolyQ& f, const Rational& a, const Rational& b) {
    Rational mid = (a + b) / 2;
    if (f(mid) != 0) return mid;
    for (long i = 1;; ++i) {
        Rational cand = a + (b - a) * Rational(i, 2 * i + 1);
        if (f(cand) != 0) return cand;
    }
}

// Shrink a half-open box (lo, hi] known to contain exactly one root of f.
RootBox refine_box(const PolyQ& f, Rational lo, Rational hi, const Rational& width_target) {
    if (f(hi) == 0) return {hi, hi};
    const int sb = sign_of(f(hi));
    while (hi - lo > width_target) {
        Rational mid = (lo + hi) / 2;
        int sm = sign_of(f(mid));
        if (sm == 0) return {mid, mid};
        if (sm == sb) hi = std::move(mid);
        else lo = std::move(mid);
    }
    return {lo, hi};
}

}  // namespace

std::vector<Enclosure> SignPartition::breakpoints() const {
    std::vector<Enclosure> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(Enclosure::from_rationals(r.lo, r.hi));
    return out;
}

SignPartition isolate_roots(const PolyQ& f, const Rational& lo, const Rational& hi,
                            unsigned width_bits) {
    if (f.is_zero()) throw IdenticallyZeroError();
    if (lo > hi) throw OutOfRangeError("isolate_roots: interval endpoints out of order");

    Rational width_target(1);
    width_target /= Rational(mpz_class(1) << width_bits);

    SignPartition out;
    if (f.degree() == 0 || lo == hi) {
        if (lo == hi && f(lo) == 0) {
            out.roots.push_back({lo, hi});
            out.signs = {0, 0};
        } else {
            out.signs = {f.degree() == 0 ? sign_of(f.coeff(0)) : sign_of(f(lo))};
        }
        return out;
    }

    const PolyQ fsq = [&] {
        PolyQ g = poly_gcd(f, f.derivative());
        if (g.degree() <= 0) return primitive_keep_sign(f);
        return primitive_keep_sign(poly_quotient(f, g));
    }();

    const SturmChain chain = build_sturm(fsq);

    std::vector<RootBox> boxes;
    if (fsq(lo) == 0) boxes.push_back({lo, lo});  // Sturm counts (lo, hi] only

    struct Segment {
        Rational a, b;
        int count;
    };
    std::vector<Segment> work;
    {
        int total = chain.variations(lo) - chain.variations(hi);
        if (total > 0) work.push_back({lo, hi, total});
    }
    while (!work.empty()) {
        Segment seg = std::move(work.back());
        work.pop_back();
        if (seg.count == 1) {
            boxes.push_back(refine_box(fsq, seg.a, seg.b, width_target));
            continue;
        }
        // split at a non-root point so exact roots stay interior to one half
        Rational mid = nonroot_split(fsq, seg.a, seg.b);
        int left = chain.variations(seg.a) - chain.variations(mid);
        int right = seg.count - left;
        if (left > 0) work.push_back({seg.a, mid, left});
        if (right > 0) work.push_back({mid, seg.b, right});
    }

    std::sort(boxes.begin(), boxes.end(),
              [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });
    boxes.erase(std::unique(boxes.begin(), boxes.end(),
                            [](const RootBox& x, const RootBox& y) {
                                return x.lo == y.lo && x.hi == y.hi;
                            }),
                boxes.end());

    out.roots = std::move(boxes);
    out.signs.resize(out.roots.size() + 1);
    Rational prev = lo;
    for (std::size_t i = 0; i <= out.roots.size(); ++i) {
        Rational next = (i < out.roots.size()) ? out.roots[i].lo : hi;
        out.signs[i] = (next > prev) ? sign_of(f((prev + next) / 2)) : 0;
        if (i < out.roots.size()) prev = out.roots[i].hi;
    }
    return out;
}

RationalInterval certified_min_abs(const PolyQ& f, const Rational& lo, const Rational& hi,
                                   unsigned width_bits) {
    if (f.is_zero()) throw IdenticallyZeroError();
    SignPartition part = isolate_roots(f, lo, hi, width_bits);
    if (!part.roots.empty()) return RationalInterval::point(Rational(0));

    // No roots: |f| is smooth and positive; the min sits at an endpoint or a
    // critical point. Interval evaluation over a critical box gives the certified
    // lower bound, the exact value at the box midpoint the upper bound.
    Rational best_exact = std::min(abs_of(f(lo)), abs_of(f(hi)));
    Rational best_lower = best_exact;
    PolyQ d = f.derivative();
    if (!d.is_zero()) {
        SignPartition crit = isolate_roots(d, lo, hi, width_bits);
        for (const auto& box : crit.roots) {
            RationalInterval range = interval_eval(f, {box.lo, box.hi}).abs();
            best_lower = std::min(best_lower, range.lo);
            best_exact = std::min(best_exact, abs_of(f((box.lo + box.hi) / 2)));
        }
    }
    return {best_lower, best_exact};
}

RationalInterval certified_max_abs_sum(const std::vector<PolyQ>& parts_in, const Rational& lo,
                                       const Rational& hi, unsigned width_bits) {
    std::vector<PolyQ> parts;
    for (const auto& p : parts_in)
        if (!p.is_zero()) parts.push_back(p);
    if (parts.empty()) throw IdenticallyZeroError("all summands are zero polynomials");

    // Root boxes of every part, merged into clusters; between clusters each part keeps
    // a fixed sign and the sum of absolute values is a plain polynomial.
    std::vector<RootBox> boxes;
    for (const auto& p : parts) {
        SignPartition sp = isolate_roots(p, lo, hi, width_bits);
        for (auto& b : sp.roots) boxes.push_back(b);
    }
    std::sort(boxes.begin(), boxes.end(),
              [](const RootBox& a, const RootBox& b) { return a.lo < b.lo; });
    std::vector<RootBox> clusters;
    for (const auto& b : boxes) {
        if (!clusters.empty() && b.lo <= clusters.back().hi)
            clusters.back().hi = std::max(clusters.back().hi, b.hi);
        else
            clusters.push_back(b);
    }

    auto exact_value = [&](const Rational& x) {
        Rational v(0);
        for (const auto& p : parts) v += abs_of(p(x));
        return v;
    };

    Rational best_lower = std::max(exact_value(lo), exact_value(hi));
    Rational best_upper;
    bool have_upper = false;
    auto consider_upper = [&](const Rational& v) {
        if (!have_upper || v > best_upper) best_upper = v;
        have_upper = true;
    };

    std::vector<std::pair<Rational, Rational>> pure_cells;
    Rational cursor = lo;
    for (const auto& c : clusters) {
        if (c.lo > cursor) pure_cells.emplace_back(cursor, c.lo);
        cursor = std::max(cursor, c.hi);
    }
    if (hi > cursor) pure_cells.emplace_back(cursor, hi);

    for (const auto& [u, v] : pure_cells) {
        Rational sample = (u + v) / 2;
        PolyQ signed_sum;
        for (const auto& p : parts) {
            int s = sign_of(p(sample));
            signed_sum = signed_sum + (s >= 0 ? p : -p);
        }
        // signed_sum equals the abs-sum on the closed cell (parts vanish only at relic
        // cluster edges, where both agree)
        Rational cell_best = std::max(signed_sum(u), signed_sum(v));
        Rational cell_upper = cell_best;
        best_lower = std::max(best_lower, cell_best);
        PolyQ d = signed_sum.derivative();
        if (!d.is_zero()) {
            SignPartition crit = isolate_roots(d, u, v, width_bits);
            for (const auto& box : crit.roots) {
                RationalInterval range = interval_eval(signed_sum, {box.lo, box.hi});
                cell_upper = std::max(cell_upper, range.hi);
                best_lower = std::max(best_lower, exact_value((box.lo + box.hi) / 2));
            }
        }
        consider_upper(cell_upper);
    }

    for (const auto& c : clusters) {
        RationalInterval acc;
        bool first = true;
        for (const auto& p : parts) {
            RationalInterval r = interval_eval(p, {c.lo, c.hi}).abs();
            acc = first ? r : acc + r;
            first = false;
        }
        consider_upper(acc.hi);
        best_lower = std::max(best_lower, exact_value((c.lo + c.hi) / 2));
    }

    if (!have_upper) consider_upper(exact_value(lo));  // lo == hi corner case
    best_upper = std::max(best_upper, best_lower);
    return {best_lower, best_upper};
}

Enclosure min_abs_symmetric_sum(const Autocorrelation& ac) {
    if (ac.q.is_zero()) throw IdenticallyZeroError();
    PolyQ s = ac.q + ac.q.compose_affine(Rational(-1), Rational(1));
    if (s.is_zero()) return Enclosure::from_rational(Rational(0));
    return certified_min_abs(s, Rational(0), Rational(1)).to_enclosure();
}

Enclosure max_abs_pair_sum(const Autocorrelation& ac) {
    if (ac.q.is_zero()) throw IdenticallyZeroError();
    PolyQ mirrored = ac.q.compose_affine(Rational(-1), Rational(1));
    return certified_max_abs_sum({ac.q, mirrored}, Rational(0), Rational(1)).to_enclosure();
}

Enclosure truncated_shift_sum_max(const Autocorrelation& ac, int m) {
    if (m < 0) throw OutOfRangeError("truncated_shift_sum_max: m must be >= 0");
    if (ac.q.is_zero()) throw IdenticallyZeroError();
    if (m == 0)
        return certified_max_abs_sum({ac.q}, Rational(0), Rational(1)).to_enclosure();
    return max_abs_pair_sum(ac);
}

}  // namespace fopt
