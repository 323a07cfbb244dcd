#include <gtest/gtest.h>

#include <cmath>

#include "coefid/operators.hpp"

namespace {

using coefid::CurveComposite;
using coefid::Error;
using coefid::ErrorKind;
using coefid::GridFunction;
using coefid::Interval;
using coefid::NormKind;
using coefid::RegularizedSecondDiff;
using coefid::WProjection;

const Interval kUnit(0.0, 1.0);

template <class F>
GridFunction on_unit(std::size_t n, F f) {
    return GridFunction::sample(kUnit, n, f);
}

// (s + s^2) / 2: increasing, derivative in [1/2, 3/2], image [0,1].
CurveComposite half_quadratic(std::size_t n) {
    return CurveComposite(on_unit(n, [](double s) { return 0.5 * (s + s * s); }), 0.5, 1.5);
}

double interior_max_abs(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

TEST(ApplyT1, Zero) {
    EXPECT_EQ(coefid::norm(coefid::apply_T1(GridFunction::zeros(kUnit, 101)), NormKind::Linf), 0.0);
}

TEST(ApplyT1, ConstantGivesIdentityAndSandwich) {
    const GridFunction one = on_unit(101, [](double) { return 1.0; });
    const GridFunction x = coefid::apply_T1(one);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], x.node(i), 1e-12);
    const double h1 = coefid::norm(x, NormKind::H1);
    EXPECT_NEAR(h1, std::sqrt(1.0 / 3.0 + 1.0), 1e-10);
    EXPECT_LE(coefid::norm(one, NormKind::L2), h1);
    EXPECT_LE(h1, 2.0);
}

TEST(ApplyT1, LinearGivesQuadratic) {
    const GridFunction b = coefid::apply_T1(on_unit(101, [](double t) { return 1.0 - t; }));
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double x = b.node(i);
        EXPECT_NEAR(b[i], x - x * x / 2.0, 1e-12);
    }
}

// On long intervals the bound ||T1 w||_H1 <= (1 + sqrt L) ||w|| fails under the
// sum-of-squares H1 norm; the sharp constant is sqrt(1 + (2L/pi)^2).
TEST(ApplyT1, UpperBoundWithSqrtLengthFailsOnLongIntervals) {
    const double len = 10.0;
    const GridFunction one = GridFunction::sample(Interval(0.0, len), 2001, [](double) { return 1.0; });
    const double ratio = coefid::norm(coefid::apply_T1(one), NormKind::H1) / coefid::norm(one, NormKind::L2);
    EXPECT_NEAR(ratio, std::sqrt((len * len * len / 3.0 + len) / len), 1e-9);
    EXPECT_GT(ratio, 1.0 + std::sqrt(len));
    EXPECT_LE(ratio, std::sqrt(1.0 + std::pow(2.0 * len / M_PI, 2)));
}

TEST(ApplyT2alpha, Constant) {
    const RegularizedSecondDiff op(0.3, kUnit);
    const GridFunction r = coefid::apply_T2alpha(op, on_unit(51, [](double) { return 1.0; }));
    for (double v : r.values()) EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(ApplyT2alpha, Quadratic) {
    const RegularizedSecondDiff op(0.1, kUnit);
    const GridFunction r = coefid::apply_T2alpha(op, on_unit(101, [](double x) { return x * x; }));
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = r.node(i);
        EXPECT_NEAR(r[i], x * x - 0.2, 1e-9);
    }
}

TEST(ApplyT2alpha, AlphaOutsideUnitIntervalRejected) {
    for (double a : {0.0, 1.0, -0.5, 2.0}) {
        try {
            RegularizedSecondDiff(a, kUnit);
            ADD_FAILURE() << a;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
        }
    }
}

TEST(ApplyT2alpha, AnnihilatesTheRangeOfL) {
    const std::size_t n = 2001;
    for (double alpha : {0.5, 0.1, 0.01}) {
        const RegularizedSecondDiff op(alpha, kUnit);
        const GridFunction lx = coefid::apply_L(WProjection(kUnit), alpha,
                                               on_unit(n, [](double t) { return 1.0 + std::sin(3.0 * t); }));
        const GridFunction r = coefid::apply_T2alpha(op, lx);
        const double h = lx.spacing();
        const double scale = coefid::norm(lx, NormKind::Linf) / alpha;
        EXPECT_LE(interior_max_abs(r), 10.0 * h * h * scale) << alpha;
    }
}

// max{1, alpha} ||w||_H2 does not bound ||T2alpha w|| under the sum-of-squares
// H2 norm: w = sin on [0, pi] gives (1 + alpha) / sqrt 3 > 1 for alpha = 0.9.
// The gap ||(T2alpha - T2) w|| = alpha ||w''|| stays below alpha ||w||_H2.
TEST(ApplyT2alpha, MaxOneAlphaBoundNeedsTheSumConvention) {
    const double alpha = 0.9;
    const Interval iv(0.0, M_PI);
    const GridFunction w = GridFunction::sample(iv, 4001, [](double x) { return std::sin(x); });
    const GridFunction tw = coefid::apply_T2alpha(RegularizedSecondDiff(alpha, iv), w);
    const double ratio = coefid::norm(tw, NormKind::L2) / coefid::norm(w, NormKind::H2);
    EXPECT_NEAR(ratio, (1.0 + alpha) / std::sqrt(3.0), 1e-5);
    EXPECT_GT(ratio, std::max(1.0, alpha));

    const GridFunction d1 = coefid::derivative(w);
    const GridFunction d2 = coefid::second_derivative(w);
    const double sum_norm = coefid::norm(w, NormKind::L2) + coefid::norm(d1, NormKind::L2) +
                            coefid::norm(d2, NormKind::L2);
    EXPECT_LE(coefid::norm(tw, NormKind::L2), std::max(1.0, alpha) * sum_norm);

    const GridFunction gap = (-alpha) * d2;
    EXPECT_LE(coefid::norm(gap, NormKind::L2), alpha * coefid::norm(w, NormKind::H2));
}

TEST(ApplyL, VanishesOnW) {
    const GridFunction x = on_unit(201, [](double t) { return t - t * t / 2.0; });
    const GridFunction lx = coefid::apply_L(WProjection(kUnit), 0.1, x);
    EXPECT_LE(coefid::norm(lx, NormKind::Linf), 1e-12);
}

TEST(ApplyL, ConstantMatchesHyperbolicFormula) {
    const GridFunction lx = coefid::apply_L(WProjection(kUnit), 0.25, on_unit(401, [](double) { return 1.0; }));
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double u = 2.0 * (lx.node(i) - 1.0);
        const double expect = (std::exp(u) + std::exp(-u)) / (std::exp(-2.0) + std::exp(2.0));
        EXPECT_NEAR(lx[i], expect, 1e-8);
    }
}

TEST(ApplyL, AgreesWithContinuumCoefficientsToSecondOrder) {
    // Continuum L uses the exact x'(g1); the grid version uses the one-sided stencil.
    const Interval iv(0.0, 1.5);
    const double alpha = 0.05;
    const double r = std::sqrt(alpha);
    const auto x = [](double t) { return std::sin(2.0 * t) + t; };
    const double dx1 = 2.0 * std::cos(3.0) + 1.0;
    double prev = 0.0;
    for (std::size_t n : {201u, 401u, 801u}) {
        const GridFunction lx = coefid::apply_L(WProjection(iv), alpha, GridFunction::sample(iv, n, x));
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = lx.node(i);
            const double ref = dx1 * r * std::sinh(t / r) / std::cosh(1.5 / r) +
                               x(0.0) * std::cosh((t - 1.5) / r) / std::cosh(1.5 / r);
            err = std::max(err, std::abs(lx[i] - ref));
        }
        if (prev > 0.0) {
            EXPECT_NEAR(prev / err, 4.0, 0.4) << n;
        }
        prev = err;
    }
}

TEST(ApplyL, SmallAlphaDoesNotOverflow) {
    const Interval iv(0.0, 10.0);
    const GridFunction lx = coefid::apply_L(WProjection(iv), 1e-6, GridFunction::sample(iv, 2001, [](double t) {
                                                return 1.0 + t;
                                            }));
    for (double v : lx.values()) EXPECT_TRUE(std::isfinite(v));
    EXPECT_NEAR(lx[0], 1.0, 1e-12);
}

TEST(ProjectW, ElementOfWUnchanged) {
    // The end stencil is exact on quadratics, so a quadratic element of W is fixed to rounding.
    const GridFunction q = on_unit(201, [](double t) { return 2.0 * t - t * t; });
    EXPECT_LE(coefid::max_abs_diff(coefid::project_W(WProjection(kUnit), 0.2, q), q), 1e-12);
    // A cubic element of W moves by the O(h^2) stencil error only.
    const GridFunction w = on_unit(201, [](double t) { return t * t * (1.5 - t); });
    const double h = w.spacing();
    EXPECT_LE(coefid::max_abs_diff(coefid::project_W(WProjection(kUnit), 0.2, w), w), 10.0 * h * h);
    // x(0) = 0 but x'(1) = 1, so x is not in W and does move.
    const GridFunction x = on_unit(201, [](double t) { return std::sin(M_PI * t / 2.0) * t; });
    EXPECT_GT(coefid::max_abs_diff(coefid::project_W(WProjection(kUnit), 0.2, x), x), 1e-3);
}

TEST(ProjectW, ConstantLandsInW) {
    const GridFunction x = on_unit(401, [](double) { return 1.0; });
    const GridFunction p = coefid::project_W(WProjection(kUnit), 0.25, x);
    EXPECT_EQ(p[0], 0.0);
    const std::size_t n = p.size();
    const double end_slope = (3.0 * p[n - 1] - 4.0 * p[n - 2] + p[n - 3]) / (2.0 * p.spacing());
    EXPECT_LE(std::abs(end_slope), 1e-10);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 2.0 * (p.node(i) - 1.0);
        EXPECT_NEAR(p[i], 1.0 - std::cosh(u) / std::cosh(2.0), 1e-8);
    }
}

TEST(ProjectW, Idempotent) {
    const WProjection proj(Interval(-1.0, 2.0));
    const GridFunction x = GridFunction::sample(proj.interval(), 301, [](double t) { return std::exp(t) - t * t; });
    for (double alpha : {0.9, 0.1, 1e-3}) {
        const GridFunction p = coefid::project_W(proj, alpha, x);
        const GridFunction pp = coefid::project_W(proj, alpha, p);
        EXPECT_LE(coefid::max_abs_diff(p, pp), 1e-10 * coefid::norm(x, NormKind::Linf)) << alpha;
    }
}

TEST(ApplyT3, Constant) {
    const CurveComposite c = half_quadratic(101);
    const GridFunction r = coefid::apply_T3(c, on_unit(51, [](double) { return 1.0; }));
    for (double v : r.values()) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(ApplyT3, IdentityComposite) {
    const CurveComposite c = CurveComposite::measured(on_unit(101, [](double s) { return s; }));
    const GridFunction r = coefid::apply_T3(c, on_unit(101, [](double z) { return z * z; }));
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], r.node(i) * r.node(i), 1e-14);
}

TEST(ApplyT3, QuadraticCompositeAndSandwich) {
    // s^2 itself has no positive derivative floor, so (s + s^2)/2 stands in for it.
    const CurveComposite c = half_quadratic(2001);
    const GridFunction r = coefid::apply_T3(c, on_unit(2001, [](double z) { return z; }));
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double s = r.node(i);
        EXPECT_NEAR(r[i], 0.5 * (s + s * s), 1e-14);
    }
    // Change of variables: deriv_lo ||T3 zeta||^2 <= ||zeta||^2 <= deriv_hi ||T3 zeta||^2.
    const GridFunction zeta = on_unit(2001, [](double z) { return 1.0 + std::cos(3.0 * z); });
    const double lhs = std::pow(coefid::norm(coefid::apply_T3(c, zeta), NormKind::L2), 2);
    const double mid = std::pow(coefid::norm(zeta, NormKind::L2), 2);
    EXPECT_LE(c.deriv_lo() * lhs, mid);
    EXPECT_LE(mid, c.deriv_hi() * lhs);
}

TEST(ApplyT3, ImageOutsideDomain) {
    const CurveComposite c = half_quadratic(101);
    try {
        coefid::apply_T3(c, GridFunction::sample(Interval(0.0, 0.5), 51, [](double z) { return z; }));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ImageMismatch);
    }
}

TEST(ApplyT3epsPinv, ZeroData) {
    const CurveComposite c = half_quadratic(201);
    const auto common = coefid::intersect_images(c, c, 0.0);
    const GridFunction z = coefid::apply_T3eps_pinv(c, common, GridFunction::zeros(kUnit, 201));
    EXPECT_EQ(coefid::norm(z, NormKind::Linf), 0.0);
}

TEST(ApplyT3epsPinv, IdentityComposite) {
    const CurveComposite c = CurveComposite::measured(on_unit(201, [](double s) { return s; }));
    const auto common = coefid::intersect_images(c, c, 0.0);
    const GridFunction z = coefid::apply_T3eps_pinv(c, common, on_unit(201, [](double s) { return s - s * s / 2.0; }));
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double x = z.node(i);
        EXPECT_NEAR(z[i], x - x * x / 2.0, 1e-12);
    }
}

TEST(ApplyT3epsPinv, InvertsTheComposite) {
    const CurveComposite c = half_quadratic(401);
    const auto common = coefid::intersect_images(c, c, 0.0);
    // Data equal to the composite itself pull back to the identity.
    const GridFunction z = coefid::apply_T3eps_pinv(c, common, c.forward());
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(z[i], z.node(i), 1e-12);
    // Data s pull back to the inverse (sqrt(1 + 8z) - 1) / 2, up to interpolation error.
    const GridFunction inv = coefid::apply_T3eps_pinv(c, common, on_unit(401, [](double s) { return s; }));
    const double h = c.forward().spacing();
    for (std::size_t i = 0; i < inv.size(); ++i) {
        EXPECT_NEAR(inv[i], 0.5 * (std::sqrt(1.0 + 8.0 * inv.node(i)) - 1.0), h * h);
    }
    // ||zeta||^2 <= deriv_hi ||f||^2 by the change of variables.
    const GridFunction f = on_unit(401, [](double s) { return std::sin(5.0 * s) + s; });
    const GridFunction zf = coefid::apply_T3eps_pinv(c, common, f);
    EXPECT_LE(std::pow(coefid::norm(zf, NormKind::L2), 2), c.deriv_hi() * std::pow(coefid::norm(f, NormKind::L2), 2));
}

TEST(ExtendByZero, SameIntervalUnchanged) {
    const GridFunction z = on_unit(101, [](double x) { return std::cos(x); });
    const GridFunction e = coefid::extend_by_zero(z, kUnit);
    EXPECT_LE(coefid::max_abs_diff(e, z), 1e-15);
}

TEST(ExtendByZero, IndicatorMass) {
    const GridFunction one = GridFunction::sample(Interval(0.1, 0.9), 801, [](double) { return 1.0; });
    const GridFunction e = coefid::extend_by_zero(one, kUnit, 1001);
    EXPECT_NEAR(std::pow(coefid::norm(e, NormKind::L2), 2), 0.8, 2e-3);
    EXPECT_NEAR(coefid::integrate(e), 0.8, 1e-12);
    EXPECT_EQ(e[0], 0.0);
    EXPECT_EQ(e[1000], 0.0);
    EXPECT_EQ(e[500], 1.0);
}

TEST(ExtendByZero, VanishingCutConverges) {
    const auto f = [](double x) { return 1.0 + x; };
    double prev = INFINITY;
    for (double cut : {1e-2, 1e-3, 1e-4, 1e-6}) {
        const GridFunction z = GridFunction::sample(Interval(0.0, 1.0 - cut), 1001, f);
        const GridFunction e = coefid::extend_by_zero(z, kUnit, 1001);
        const double err = coefid::norm(e - on_unit(1001, f), NormKind::L2);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-2);
}

TEST(ExtendByZero, SubIntervalMustFit) {
    try {
        coefid::extend_by_zero(GridFunction::sample(Interval(-0.1, 0.5), 11, [](double) { return 1.0; }), kUnit);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ImageMismatch);
    }
}

}  // namespace
