#include "coefid/properties.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "coefid/experiments.hpp"
#include "coefid/func1d.hpp"
#include "coefid/intervals.hpp"
#include "coefid/operators.hpp"
#include "coefid/pwl.hpp"

namespace coefid {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok;
    std::string detail;
};

/// Random smooth function on an interval: a few cosine modes plus a quadratic
/// in the normalized coordinate.
struct RandomSmooth {
    double lo = 0.0;
    double len = 1.0;
    std::array<double, 5> amp{};
    std::array<double, 5> phase{};
    std::array<double, 3> poly{};

    double operator()(double t) const {
        const double u = (t - lo) / len;
        double v = poly[0] + poly[1] * u + poly[2] * u * u;
        for (std::size_t k = 0; k < amp.size(); ++k) {
            v += amp[k] * std::cos(static_cast<double>(k) * kPi * u + phase[k]);
        }
        return v;
    }
};

RandomSmooth random_smooth(std::mt19937_64& rng, const Interval& I) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    RandomSmooth f;
    f.lo = I.lo();
    f.len = I.length();
    for (std::size_t k = 0; k < f.amp.size(); ++k) {
        f.amp[k] = normal(rng) / static_cast<double>(k + 1);
        f.phase[k] = ph(rng);
    }
    for (double& p : f.poly) p = normal(rng);
    return f;
}

GridFunction sample(const Interval& I, std::size_t n, const RandomSmooth& f) {
    return GridFunction::sample(I, n, [&](double t) { return f(t); });
}

Interval random_interval(std::mt19937_64& rng, double min_len, double max_len) {
    std::uniform_real_distribution<double> lo(-1.0, 1.0);
    std::uniform_real_distribution<double> len(min_len, max_len);
    const double a = lo(rng);
    return Interval(a, a + len(rng));
}

double log_uniform(std::mt19937_64& rng, double a, double b) {
    std::uniform_real_distribution<double> u(std::log(a), std::log(b));
    return std::exp(u(rng));
}

// The brackets below are analytic; the slack only absorbs the one-sided
// derivative stencil at the ends, whose error grows with the mode number.
constexpr double kCompositeSlack = 1e-4;

struct RandomComposite {
    CurveComposite composite;
    double c_lo;
    double c_hi;
};

/// Random monotone composite g0 + L*phi(s) (or its reversal) with
/// phi(s) = s + sum_k a_k sin(k pi s)/(k pi), so |phi'| lies in [1 - sum|a_k|, 1 + sum|a_k|].
RandomComposite random_composite(std::mt19937_64& rng, const Interval& I, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> total(0.0, 0.8);
    std::bernoulli_distribution flip(0.5);
    std::array<double, 3> a{};
    double s = 0.0;
    for (double& x : a) {
        x = u(rng);
        s += std::abs(x);
    }
    const double target = total(rng);
    for (double& x : a) x *= target / s;
    const bool decreasing = flip(rng);
    const double g0 = I.lo();
    const double L = I.length();
    GridFunction fwd = GridFunction::sample(Interval(0.0, 1.0), n, [&](double t) {
        double p = t;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double kp = static_cast<double>(k + 1) * kPi;
            p += a[k] * std::sin(kp * t) / kp;
        }
        return decreasing ? g0 + L * (1.0 - p) : g0 + L * p;
    });
    const double c_lo = L * (1.0 - target);
    const double c_hi = L * (1.0 + target);
    return RandomComposite{CurveComposite(std::move(fwd), c_lo, c_hi, kCompositeSlack), c_lo, c_hi};
}

/// c + t * eps * phi with phi a random cosine sum (non-zero at the ends), scaled
/// so that both |phi| and |phi'| are at most 1.
CurveComposite perturb(std::mt19937_64& rng, const RandomComposite& rc, double eps, double t = 1.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<double, 4> c{};
    for (double& x : c) x = normal(rng);
    auto phi = [&](double s) {
        double v = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) v += c[k] * std::cos(static_cast<double>(k) * kPi * s);
        return v;
    };
    double bound = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) bound += std::abs(c[k]) * std::max(1.0, static_cast<double>(k) * kPi);
    const GridFunction& f = rc.composite.forward();
    std::vector<double> v(f.values());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * eps * phi(f.node(i)) / bound;
    return CurveComposite(f.with_values(std::move(v)), rc.c_lo - eps, rc.c_hi + eps, kCompositeSlack);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

Outcome t1_sandwich(std::mt19937_64& rng) {
    double worst_lower = 0.0;
    double worst_upper = 0.0;
    double worst_sharp = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const double L = I.length();
        const GridFunction w = sample(I, 1001, random_smooth(rng, I));
        const GridFunction t1w = apply_T1(w);
        for (int r = 0; r <= 1; ++r) {
            const double base = norm(w, r == 0 ? NormKind::L2 : NormKind::H1);
            const double mid = norm(t1w, r == 0 ? NormKind::H1 : NormKind::H2);
            const double lower = base / mid;
            const double upper = mid / ((1.0 + std::sqrt(L)) * base);
            const double sharp = mid / (std::sqrt(1.0 + std::pow(2.0 * L / kPi, 2)) * base);
            worst_lower = std::max(worst_lower, lower);
            worst_upper = std::max(worst_upper, upper);
            worst_sharp = std::max(worst_sharp, sharp);
            ok = ok && lower <= 1.0 + 1e-2 && upper <= 1.0 + 1e-2 && sharp <= 1.0 + 1e-2;
        }
    }
    return {ok, "max |w|/|T1w| " + fmt(worst_lower) + ", max |T1w|/((1+sqrt L)|w|) " + fmt(worst_upper) +
                    ", max |T1w|/(sqrt(1+(2L/pi)^2)|w|) " + fmt(worst_sharp) + " (limit 1.01)"};
}

Outcome t2alpha_gap(std::mt19937_64& rng) {
    const std::array<double, 5> alphas{0.5, 1e-1, 1e-2, 1e-3, 1e-4};
    std::ostringstream os;
    bool ok = true;
    double prev = INFINITY;
    for (double alpha : alphas) {
        double sup = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const Interval I = random_interval(rng, 0.2, 2.0);
            const GridFunction w = sample(I, 1001, random_smooth(rng, I));
            const GridFunction gap = apply_T2alpha(RegularizedSecondDiff(alpha, I), w) - w;
            sup = std::max(sup, norm(gap, NormKind::L2) / norm(w, NormKind::H2));
        }
        ok = ok && sup <= alpha * (1.0 + 1e-9) && sup < prev;
        prev = sup;
        os << "alpha " << alpha << ": sup gap/alpha " << fmt(sup / alpha) << "; ";
    }
    return {ok, os.str()};
}

Outcome t2alpha_lower_bounds(std::mt19937_64& rng) {
    double min_h2 = INFINITY;
    double min_h1 = INFINITY;
    int violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const double alpha = log_uniform(rng, 1e-3, 0.9);
        const GridFunction x = sample(I, 2001, random_smooth(rng, I));
        const GridFunction w = project_W(WProjection(I), alpha, x);
        const double t = norm(apply_T2alpha(RegularizedSecondDiff(alpha, I), w), NormKind::L2);
        const double r2 = t / (alpha * norm(w, NormKind::H2));
        const double r1 = t / (std::sqrt(alpha) * norm(w, NormKind::H1));
        min_h2 = std::min(min_h2, r2);
        min_h1 = std::min(min_h1, r1);
        if (r2 < 1.0 - 1e-2 || r1 < 1.0 - 1e-2) ++violations;
    }
    return {violations == 0, "min |T2a w|/(a |w|_H2) " + fmt(min_h2) + ", min |T2a w|/(sqrt(a) |w|_H1) " +
                                 fmt(min_h1) + ", violations beyond 1% margin " + std::to_string(violations)};
}

Outcome l_null_space(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const double alpha = log_uniform(rng, 1e-3, 0.9);
        const GridFunction x = sample(I, 2001, random_smooth(rng, I));
        const GridFunction lx = apply_L(WProjection(I), alpha, x);
        const GridFunction d2 = second_derivative(lx);
        double res = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) res = std::max(res, std::abs(alpha * d2[i] - lx[i]));
        const double dx = lx.spacing();
        const double scale = norm(lx, NormKind::Linf) * std::max(1.0, 1.0 / alpha);
        worst = std::max(worst, res / (dx * dx * scale));
    }
    return {worst <= 10.0, "max |a (Lx)'' - Lx| / (dx^2 scale) = " + fmt(worst) + " (limit 10)"};
}

Outcome l_projection(std::mt19937_64& rng) {
    double worst_left = 0.0;
    double worst_slope = 0.0;
    double worst_idem = 0.0;
    double worst_ll = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const double alpha = log_uniform(rng, 1e-3, 0.9);
        const WProjection P(I);
        const GridFunction x = sample(I, 2001, random_smooth(rng, I));
        const GridFunction lx = apply_L(P, alpha, x);
        const GridFunction w = x - lx;
        const std::size_t n = w.size();
        const double dx = w.spacing();
        const double scale = norm(x, NormKind::Linf) + norm(lx, NormKind::Linf);
        worst_left = std::max(worst_left, std::abs(w[0]) / scale);
        const double slope = (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) / (2.0 * dx);
        worst_slope = std::max(worst_slope, std::abs(slope) * dx / scale);
        worst_idem = std::max(worst_idem, max_abs_diff(project_W(P, alpha, w), w) / scale);
        worst_ll = std::max(worst_ll, max_abs_diff(apply_L(P, alpha, lx), lx) / scale);
    }
    const bool ok = worst_left <= 1e-12 && worst_slope <= 1e-10 && worst_idem <= 1e-10 && worst_ll <= 1e-10;
    return {ok, "|(x-Lx)(g0)| " + fmt(worst_left) + ", dx |(x-Lx)'(g1)| " + fmt(worst_slope) +
                    ", idempotence " + fmt(worst_idem) + ", |L(Lx) - Lx| " + fmt(worst_ll) + " (relative to scale)"};
}

Outcome integration_by_parts(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const double alpha = log_uniform(rng, 1e-2, 0.5);
        const WProjection P(I);
        const GridFunction w1 = project_W(P, alpha, sample(I, 2001, random_smooth(rng, I)));
        const GridFunction w2 = project_W(P, alpha, sample(I, 2001, random_smooth(rng, I)));
        const double lhs = inner(w1, second_derivative(w2)) + inner(derivative(w1), derivative(w2));
        const double dx = w1.spacing();
        const double rel = std::abs(lhs) / (norm(w1, NormKind::H1) * norm(w2, NormKind::H2));
        worst = std::max(worst, rel / (dx * dx / alpha));
    }
    return {worst <= 10.0, "max |int w1 w2'' + int w1' w2'| / (|w1|_H1 |w2|_H2 dx^2/alpha) = " + fmt(worst) +
                               " (limit 10)"};
}

double l2_squared(const GridFunction& f) {
    std::vector<double> v(f.values());
    for (double& x : v) x *= x;
    return integrate(f.with_values(std::move(v)));
}

Outcome composition_sandwich(std::mt19937_64& rng) {
    double worst_lo = 0.0;
    double worst_hi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const RandomComposite rc = random_composite(rng, I, 2001);
        const GridFunction w = sample(I, 2001, random_smooth(rng, I));
        const double t3 = l2_squared(apply_T3(rc.composite, w));
        const double wn = l2_squared(w);
        worst_lo = std::max(worst_lo, rc.c_lo * t3 / wn);
        worst_hi = std::max(worst_hi, wn / (rc.c_hi * t3));
    }
    return {worst_lo <= 1.0 + 1e-2 && worst_hi <= 1.0 + 1e-2,
            "max C |T3 w|^2 / |w|^2 " + fmt(worst_lo) + ", max |w|^2 / (C' |T3 w|^2) " + fmt(worst_hi) +
                " (limit 1.01)"};
}

Outcome t3eps_bounds(std::mt19937_64& rng) {
    double worst_up = 0.0;
    double worst_down = 0.0;
    double worst_pinv = 0.0;
    const std::size_t n = 4001;
    for (int trial = 0; trial < 100; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const RandomComposite rc = random_composite(rng, I, n);
        const double eps = log_uniform(rng, 1e-4, 0.9 * admissible_eps(I.lo(), I.hi(), rc.c_lo));
        const CurveComposite pert = perturb(rng, rc, eps);
        const IntersectionResult inter = intersect_images(rc.composite, pert, eps);
        const Interval& common = inter.common;
        const RandomSmooth zeta = random_smooth(rng, I);

        const GridFunction t3e = pert.forward().with_values([&] {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double z = pert.forward()[i];
                v[i] = common.contains(z) ? zeta(z) : 0.0;
            }
            return v;
        }());
        const double tn = l2_squared(t3e);
        const double zn = l2_squared(sample(common, n, zeta));
        worst_up = std::max(worst_up, 0.5 * rc.c_lo * tn / zn);
        worst_down = std::max(worst_down, zn / (2.0 * rc.c_hi * tn));

        const GridFunction f = sample(Interval(0.0, 1.0), n, random_smooth(rng, Interval(0.0, 1.0)));
        const GridFunction zt = apply_T3eps_pinv(pert, inter, f, n);
        worst_pinv = std::max(worst_pinv, l2_squared(zt) / (2.0 * rc.c_hi * l2_squared(f)));
    }
    const bool ok = worst_up <= 1.0 + 1e-2 && worst_down <= 1.0 + 1e-2 && worst_pinv <= 1.0 + 1e-2;
    return {ok, "max (C/2)|T3e z|^2/|z|^2 " + fmt(worst_up) + ", max |z|^2/(2C'|T3e z|^2) " + fmt(worst_down) +
                    ", max |pinv f|^2/(2C'|f|^2) " + fmt(worst_pinv) + " (limit 1.01)"};
}

Outcome sup_norm_inequality(std::mt19937_64& rng) {
    double worst = 0.0;
    double worst_c1 = 0.0;
    double worst_len = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const double len = log_uniform(rng, 0.1, 10.0);
        std::uniform_real_distribution<double> lo(-5.0, 5.0);
        const double a = lo(rng);
        const Interval I(a, a + len);
        const GridFunction f = sample(I, 2001, random_smooth(rng, I));
        const auto [lhs, rhs] = sup_bound_check(f);
        worst = std::max(worst, lhs / rhs);
        const double r1 = lhs / (rhs / kSupBoundConstant);
        if (r1 > worst_c1) {
            worst_c1 = r1;
            worst_len = len;
        }
    }
    return {worst <= 1.0, "max lhs/rhs " + fmt(worst) + " with C = " + fmt(kSupBoundConstant) +
                              "; with C = 1 the worst ratio is " + fmt(worst_c1) + " at |J| = " + fmt(worst_len)};
}

/// <w - p, hat_i> for every node i, by two-point Gauss quadrature on the pieces
/// between merged grid and mesh breakpoints (exact for the piecewise quadratic integrand).
std::vector<double> gauss_residual(const UniformMesh& mesh, const GridFunction& w, const PwlFunction& p) {
    std::vector<double> cuts;
    for (std::size_t i = 0; i < w.size(); ++i) cuts.push_back(w.node(i));
    for (std::size_t j = 0; j <= mesh.cells(); ++j) cuts.push_back(mesh.breakpoint(j));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-14; }), cuts.end());
    const double N = static_cast<double>(mesh.cells());
    const double g = 1.0 / std::sqrt(3.0);
    std::vector<double> r(mesh.cells() + 1, 0.0);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double u = cuts[k];
        const double v = cuts[k + 1];
        const double m = 0.5 * (u + v);
        const double hw = 0.5 * (v - u);
        const auto j = std::min(static_cast<std::size_t>(m * N), mesh.cells() - 1);
        for (double x : {m - g * hw, m + g * hw}) {
            const double res = w.eval(x) - p.eval(x);
            r[j] += hw * res * (mesh.breakpoint(j + 1) - x) * N;
            r[j + 1] += hw * res * (x - mesh.breakpoint(j)) * N;
        }
    }
    return r;
}

Outcome galerkin_orthogonality(std::mt19937_64& rng) {
    double worst = 0.0;
    std::uniform_int_distribution<std::size_t> cells(8, 1024);
    std::uniform_real_distribution<double> noise(-0.1, 0.1);
    for (int trial = 0; trial < 20; ++trial) {
        const Interval U(0.0, 1.0);
        const RandomSmooth s = random_smooth(rng, U);
        const GridFunction w = GridFunction::sample(U, 4097, [&](double t) { return s(t) + noise(rng); });
        const UniformMesh mesh(cells(rng));
        const PwlFunction p = project_L2(mesh, w);
        const std::vector<double> r = gauss_residual(mesh, w, p);
        double m = 0.0;
        for (double x : r) m = std::max(m, std::abs(x));
        worst = std::max(worst, m / norm(w, NormKind::L2));
    }
    return {worst <= 1e-10, "max |<w - P_h w, hat_i>| / |w| = " + fmt(worst) + " (limit 1e-10)"};
}

Outcome projection_rate(std::mt19937_64&) {
    const Interval U(0.0, 1.0);
    const GridFunction w =
        GridFunction::sample(U, 4097, [](double s) { return std::sin(2.0 * kPi * s) + std::exp(s); });
    std::vector<std::pair<double, double>> pairs;
    bool best = true;
    for (std::size_t N = 8; N <= 256; N *= 2) {
        const UniformMesh mesh(N);
        const PwlFunction p = project_L2(mesh, w);
        std::vector<double> nodal(N + 1);
        for (std::size_t i = 0; i <= N; ++i) nodal[i] = w.eval(mesh.breakpoint(i));
        const PwlFunction q(mesh, std::move(nodal));
        const double ep = norm(w - p.sample(w.size()), NormKind::L2);
        const double eq = norm(w - q.sample(w.size()), NormKind::L2);
        best = best && ep <= eq * (1.0 + 1e-12);
        pairs.emplace_back(mesh.h(), ep);
    }
    const RateFit fit = fit_rate(pairs);
    const bool ok = best && fit.slope >= 1.8 && fit.slope <= 2.2;
    return {ok, "slope " + fmt(fit.slope) + " (window [1.8, 2.2]), r^2 " + fmt(fit.r_squared) +
                    (best ? ", beats the nodal interpolant on every mesh" : ", NOT better than the nodal interpolant")};
}

Outcome inverse_inequality(std::mt19937_64& rng) {
    const double cp0 = MeshConstants{}.cp0;
    const double cp1 = MeshConstants{}.cp1;
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    double sharp0 = INFINITY;
    double sharp1 = INFINITY;
    for (std::size_t N : {4u, 16u, 64u, 256u}) {
        const UniformMesh mesh(N);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> c(N + 1);
            for (double& x : c) x = normal(rng);
            const PwlFunction p(mesh, std::move(c));
            for (int m = 0; m <= 1; ++m) {
                const auto [lhs, rhs] = inverse_inequality_check(mesh, p, m, m == 0 ? cp0 : cp1);
                worst = std::max(worst, lhs / rhs);
            }
        }
        std::vector<double> e0(N + 1, 0.0);
        e0[0] = 1.0;
        e0[1] = -0.5;
        const auto [l0, r0] = inverse_inequality_check(mesh, PwlFunction(mesh, std::move(e0)), 0, cp0);
        sharp0 = std::min(sharp0, l0 / r0);
        std::vector<double> e1(N + 1, 0.0);
        e1[0] = 1.0;
        e1[1] = -1.0;
        const auto [l1, r1] = inverse_inequality_check(mesh, PwlFunction(mesh, std::move(e1)), 1, cp1);
        sharp1 = std::min(sharp1, l1 / r1);
    }
    const bool ok = worst <= 1.0 + 1e-12 && sharp0 >= 1.0 - 1e-12 && sharp1 >= 1.0 - 1e-12;
    return {ok, "max lhs/rhs " + fmt(worst) + " on random P1; extremal ratios " + fmt(sharp0) + " (m=0), " +
                    fmt(sharp1) + " (m=1)"};
}

Outcome intersection_brute_force(std::mt19937_64& rng) {
    double worst_common = 0.0;
    double worst_gap = 0.0;
    double worst_pre = 0.0;
    bool inside = true;
    bool monotone = true;
    const std::size_t n = 2001;
    for (int trial = 0; trial < 100; ++trial) {
        const Interval I = random_interval(rng, 0.2, 2.0);
        const RandomComposite rc = random_composite(rng, I, n);
        const double eps = log_uniform(rng, 1e-4, 0.9 * admissible_eps(I.lo(), I.hi(), rc.c_lo));
        const std::uint64_t dir_seed = rng();
        std::mt19937_64 dir(dir_seed);
        const CurveComposite pert = perturb(dir, rc, eps);
        const IntersectionResult r = intersect_images(rc.composite, pert, eps);

        double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
        const std::size_t dense = 20 * n;
        for (std::size_t k = 0; k < dense; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(dense - 1);
            const double a = rc.composite.forward().eval(s);
            const double b = pert.forward().eval(s);
            lo1 = std::min(lo1, a);
            hi1 = std::max(hi1, a);
            lo2 = std::min(lo2, b);
            hi2 = std::max(hi2, b);
        }
        const double scale = std::max({1.0, std::abs(lo1), std::abs(hi1)});
        worst_common = std::max({worst_common, std::abs(r.common.lo() - std::max(lo1, lo2)) / scale,
                                 std::abs(r.common.hi() - std::min(hi1, hi2)) / scale});
        const double tol = 1e-12 * scale;
        inside = inside && r.common.subset_of(Interval(lo1, hi1), tol) && r.common.subset_of(Interval(lo2, hi2), tol);
        worst_gap = std::max({worst_gap, r.endpoint_gaps.first / eps, r.endpoint_gaps.second / eps});
        const double e0 = pert.forward().eval(r.preimage.lo());
        const double e1 = pert.forward().eval(r.preimage.hi());
        worst_pre = std::max(worst_pre, (std::abs(std::min(e0, e1) - r.common.lo()) +
                                         std::abs(std::max(e0, e1) - r.common.hi())) / scale);

        double prev_lo = INFINITY;
        double prev_hi = INFINITY;
        for (double t : {1.0, 0.5, 0.25, 0.125}) {
            std::mt19937_64 same(dir_seed);
            const IntersectionResult rt = intersect_images(rc.composite, perturb(same, rc, eps, t), eps);
            monotone = monotone && rt.endpoint_gaps.first <= prev_lo + tol && rt.endpoint_gaps.second <= prev_hi + tol;
            prev_lo = rt.endpoint_gaps.first;
            prev_hi = rt.endpoint_gaps.second;
        }
    }
    const bool ok = worst_common <= 1e-12 && inside && worst_gap <= 1.0 + 1e-12 && worst_pre <= 1e-10 && monotone;
    return {ok, "common vs brute force " + fmt(worst_common) + ", max gap/eta " + fmt(worst_gap) +
                    ", preimage mismatch " + fmt(worst_pre) + (inside ? "" : ", common NOT inside both images") +
                    (monotone ? ", gaps shrink with the perturbation" : ", gaps NOT monotone in the perturbation")};
}

using CheckFn = Outcome (*)(std::mt19937_64&);

const std::vector<std::pair<std::string, CheckFn>>& table() {
    static const std::vector<std::pair<std::string, CheckFn>> t{
        {"t1_sandwich", t1_sandwich},
        {"t2alpha_gap", t2alpha_gap},
        {"t2alpha_lower_bounds", t2alpha_lower_bounds},
        {"l_null_space", l_null_space},
        {"l_projection", l_projection},
        {"integration_by_parts", integration_by_parts},
        {"composition_sandwich", composition_sandwich},
        {"t3eps_bounds", t3eps_bounds},
        {"sup_norm_inequality", sup_norm_inequality},
        {"galerkin_orthogonality", galerkin_orthogonality},
        {"projection_rate", projection_rate},
        {"inverse_inequality", inverse_inequality},
        {"intersection_brute_force", intersection_brute_force},
    };
    return t;
}

}  // namespace

std::vector<std::string> property_names() {
    std::vector<std::string> names;
    for (const auto& e : table()) names.push_back(e.first);
    return names;
}

PropertyResult run_property(const std::string& name, std::uint64_t seed) {
    const auto& t = table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].first != name) continue;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = t[i].second(rng);
        } catch (const Error& e) {
            o = {false, std::string("raised ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return PropertyResult{name, o.ok, o.detail, secs};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown property '" + name + "'");
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed) {
    std::vector<PropertyResult> out;
    for (const auto& name : property_names()) out.push_back(run_property(name, seed));
    return out;
}

}  // namespace coefid
