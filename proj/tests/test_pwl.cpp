#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "coefid/pwl.hpp"

namespace {

using coefid::Error;
using coefid::ErrorKind;
using coefid::GridFunction;
using coefid::Interval;
using coefid::MeshConstants;
using coefid::PwlFunction;
using coefid::UniformMesh;

const Interval kUnit(0.0, 1.0);

MeshConstants unit_constants() {
    MeshConstants k;
    k.c_gamma = k.c_g = k.cp0 = k.cp1 = k.ct0 = k.ct1 = 1.0;
    return k;
}

TEST(UniformMesh, WidthAndBreakpoints) {
    const UniformMesh m = UniformMesh::from_width(0.125);
    EXPECT_EQ(m.cells(), 8u);
    EXPECT_DOUBLE_EQ(m.breakpoint(3), 0.375);
    EXPECT_EQ(m.breakpoint(8), 1.0);
    EXPECT_EQ(UniformMesh::from_width(1.0 / 3.0).cells(), 3u);
    for (double h : {0.3, 0.0, 0.75}) {
        try {
            UniformMesh::from_width(h);
            ADD_FAILURE() << h;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
        }
    }
}

TEST(PwlFunction, EvalInterpolatesNodes) {
    const PwlFunction p(UniformMesh(4), {0.0, 1.0, 0.0, -1.0, 2.0});
    EXPECT_DOUBLE_EQ(p.eval(0.125), 0.5);
    EXPECT_DOUBLE_EQ(p.eval(0.875), 0.5);
    EXPECT_DOUBLE_EQ(p.eval(1.0), 2.0);
    EXPECT_DOUBLE_EQ(p.slope(3), 12.0);
}

TEST(ProjectL2, AffineReproducedExactly) {
    const UniformMesh m(10);
    const PwlFunction p = coefid::project_L2(m, GridFunction::sample(kUnit, 401, [](double s) { return 2.0 - 3.0 * s; }));
    for (std::size_t i = 0; i <= m.cells(); ++i) EXPECT_NEAR(p.coeffs()[i], 2.0 - 3.0 * m.breakpoint(i), 1e-13);
}

TEST(ProjectL2, SquareOnTwoCellsAgainstDenseSolve) {
    // Mass matrix h/6 [2 1 0; 1 4 1; 0 1 2] with h = 1/2 and loads of s^2 against
    // the three hats: 1/96, 7/48, 17/96.
    Eigen::Matrix3d mass;
    mass << 2, 1, 0, 1, 4, 1, 0, 1, 2;
    mass *= 0.5 / 6.0;
    const Eigen::Vector3d loads(1.0 / 96.0, 7.0 / 48.0, 17.0 / 96.0);
    const Eigen::Vector3d expect = mass.fullPivLu().solve(loads);

    // Loads are exact only for the piecewise-linear interpolant of s^2, so refine the data grid.
    const UniformMesh m(2);
    for (std::size_t n : {401u, 4001u}) {
        const PwlFunction p = coefid::project_L2(m, GridFunction::sample(kUnit, n, [](double s) { return s * s; }));
        const double dx = 1.0 / static_cast<double>(n - 1);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(p.coeffs()[i], expect[i], dx * dx) << n << " " << i;
    }
    EXPECT_NEAR(expect[0], -1.0 / 24.0, 1e-14);
    EXPECT_NEAR(expect[1], 5.0 / 24.0, 1e-14);
    EXPECT_NEAR(expect[2], 23.0 / 24.0, 1e-14);
}

TEST(ProjectL2, LoadsAreExactForPiecewiseLinearData) {
    // The hat loads of grid data equal the exact integrals of its interpolant; check
    // with a dense Gram solve on a mesh that does not align with the grid.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 61;
    std::vector<double> vals(n);
    for (double& v : vals) v = u(rng);
    const GridFunction w(kUnit, vals);
    const UniformMesh m(7);
    const std::vector<double> loads = coefid::hat_loads(m, w);

    // Fine-grid oracle: integrate w * hat_i with a high-order composite rule on each grid cell.
    for (std::size_t i = 0; i <= m.cells(); ++i) {
        double acc = 0.0;
        const int sub = 3000;
        for (int k = 0; k < sub; ++k) {
            const double a = static_cast<double>(k) / sub;
            const double b = static_cast<double>(k + 1) / sub;
            const double mid = 0.5 * (a + b);
            auto hat = [&](double s) {
                const double t = s * static_cast<double>(m.cells()) - static_cast<double>(i);
                return std::max(0.0, 1.0 - std::abs(t));
            };
            acc += (b - a) / 6.0 * (w.eval(a) * hat(a) + 4.0 * w.eval(mid) * hat(mid) + w.eval(b) * hat(b));
        }
        EXPECT_NEAR(loads[i], acc, 1e-6) << i;
    }

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m.cells() + 1, m.cells() + 1);
    const double h = m.h();
    for (std::size_t k = 0; k < m.cells(); ++k) {
        gram(k, k) += h / 3.0;
        gram(k + 1, k + 1) += h / 3.0;
        gram(k, k + 1) += h / 6.0;
        gram(k + 1, k) += h / 6.0;
    }
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(loads.data(), static_cast<Eigen::Index>(loads.size()));
    const Eigen::VectorXd dense = gram.ldlt().solve(rhs);
    const PwlFunction p = coefid::project_L2(m, w);
    for (std::size_t i = 0; i <= m.cells(); ++i) EXPECT_NEAR(p.coeffs()[i], dense[static_cast<Eigen::Index>(i)], 1e-12);
}

TEST(ProjectL2, Zero) {
    const PwlFunction p = coefid::project_L2(UniformMesh(8), GridFunction::zeros(kUnit, 101));
    for (double c : p.coeffs()) EXPECT_EQ(c, 0.0);
}

TEST(ProjectL2, IdempotentOnPwlSamples) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (std::size_t N : {2u, 5u, 16u, 64u}) {
        const UniformMesh m(N);
        std::vector<double> c(N + 1);
        for (double& v : c) v = u(rng);
        const PwlFunction p(m, c);
        const PwlFunction q = coefid::project_L2(m, p.sample(8 * N + 1));
        for (std::size_t i = 0; i <= N; ++i) EXPECT_NEAR(q.coeffs()[i], c[i], 1e-12) << N;
    }
}

TEST(ProjectL2, CoarseGridRejected) {
    try {
        coefid::project_L2(UniformMesh(10), GridFunction::zeros(kUnit, 31));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridTooCoarse);
    }
    EXPECT_NO_THROW(coefid::project_L2(UniformMesh(10), GridFunction::zeros(kUnit, 41)));
}

TEST(InverseInequality, Constant) {
    const UniformMesh m(8);
    const auto [lhs, rhs] = coefid::inverse_inequality_check(m, PwlFunction(m, std::vector<double>(9, 1.0)), 0, 2.0);
    EXPECT_DOUBLE_EQ(lhs, 1.0);
    EXPECT_NEAR(rhs, 2.0, 1e-14);
}

TEST(InverseInequality, SingleHat) {
    // Per cell the hat is 0 -> 1 with ||p||_{L2(cell)} = sqrt(h/3); over its support sqrt(2h/3).
    const UniformMesh m(8);
    std::vector<double> c(9, 0.0);
    c[4] = 1.0;
    const auto [lhs, rhs] = coefid::inverse_inequality_check(m, PwlFunction(m, c), 0, 2.0);
    EXPECT_DOUBLE_EQ(lhs, 1.0);
    EXPECT_NEAR(rhs, 2.0 / std::sqrt(m.h()) * std::sqrt(m.h() / 3.0), 1e-14);
    EXPECT_LE(1.0, 2.0 / std::sqrt(m.h()) * std::sqrt(2.0 * m.h() / 3.0));
}

TEST(InverseInequality, AffineCellFirstOrder) {
    const UniformMesh m(4);
    const double h = m.h();
    const auto [lhs, rhs] = coefid::inverse_inequality_check(m, PwlFunction(m, {0.0, 1.0, 1.0, 1.0, 1.0}), 1,
                                                             MeshConstants{}.cp1);
    EXPECT_DOUBLE_EQ(lhs, 1.0 / h);
    EXPECT_NEAR(rhs, MeshConstants{}.cp1 * std::pow(h, -1.5) * std::sqrt(h / 3.0), 1e-12);
}

TEST(InverseInequality, CalibratedConstantsAreSharp) {
    const UniformMesh m(16);
    const MeshConstants k;
    // Extremals: nodal values (1, -1/2) for m = 0 and (1, -1) for m = 1.
    std::vector<double> c0(17, 0.0);
    c0[0] = 1.0;
    c0[1] = -0.5;
    const auto [l0, r0] = coefid::inverse_inequality_check(m, PwlFunction(m, c0), 0, k.cp0);
    EXPECT_NEAR(l0 / r0, 1.0, 1e-12);
    std::vector<double> c1(17, 0.0);
    c1[0] = 1.0;
    c1[1] = -1.0;
    const auto [l1, r1] = coefid::inverse_inequality_check(m, PwlFunction(m, c1), 1, k.cp1);
    EXPECT_NEAR(l1 / r1, 1.0, 1e-12);

    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> c(17);
        for (double& v : c) v = g(rng);
        const PwlFunction p(m, c);
        for (int order : {0, 1}) {
            const auto [lhs, rhs] = coefid::inverse_inequality_check(m, p, order, order == 0 ? k.cp0 : k.cp1);
            EXPECT_LE(lhs, rhs * (1.0 + 1e-12));
        }
    }
}

TEST(MeshConditions, Examples) {
    const MeshConstants k = unit_constants();
    EXPECT_TRUE(coefid::check_mesh_conditions(1e-3, 1e-6, 1.0, k));
    EXPECT_FALSE(coefid::check_mesh_conditions(0.5, 0.5, 1.0, k));
    EXPECT_TRUE(coefid::check_mesh_conditions(1e-3, 0.0, 1.0, k));
}

TEST(MeshConditions, SupGapBoundFormula) {
    const MeshConstants k;
    const double h = 0.01, eps = 1e-6, g4 = 3.0;
    EXPECT_NEAR(coefid::projected_sup_gap_bound(h, eps, g4, k),
                k.ct0 * std::pow(h, 1.5) * g4 + k.cp0 / k.c_gamma * eps / std::sqrt(h), 1e-18);
}

TEST(DerivativeBracket, Examples) {
    const PwlFunction affine(UniformMesh(4), {0.0, 0.25, 0.5, 0.75, 1.0});
    const auto [lo, hi] = coefid::derivative_bracket(affine);
    EXPECT_DOUBLE_EQ(lo, 1.0);
    EXPECT_DOUBLE_EQ(hi, 1.0);
    const PwlFunction mixed(UniformMesh(2), {0.0, 0.25, 1.25});
    const auto [lo2, hi2] = coefid::derivative_bracket(mixed);
    EXPECT_DOUBLE_EQ(lo2, 0.5);
    EXPECT_DOUBLE_EQ(hi2, 2.0);
}

TEST(DerivativeBracket, ProjectedNoisyCompositeStaysMonotone) {
    // Admissible (h, eps) keep every projected slope at least C_g C_gamma / 2.
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const MeshConstants k;
    const auto g = [](double s) { return s + 0.1 * std::sin(M_PI * s); };
    const double c_lo = 1.0 - 0.1 * M_PI;  // min g'
    MeshConstants kk = k;
    kk.c_g = c_lo;
    const double g4 = 0.1 * std::pow(M_PI, 4) / std::sqrt(2.0);
    for (double h : {0.01, 0.005, 0.0025}) {
        const double eps = 0.01 * std::pow(h, 1.5);
        ASSERT_TRUE(coefid::check_mesh_conditions(h, eps, g4, kk)) << h;
        const std::size_t n = 20001;
        std::vector<double> noise(n);
        double ss = 0.0;
        for (double& v : noise) {
            v = u(rng);
            ss += v * v;
        }
        const double scale = eps / std::sqrt(ss / static_cast<double>(n));
        const GridFunction clean = GridFunction::sample(kUnit, n, g);
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) vals[i] = clean[i] + scale * noise[i];
        const PwlFunction p = coefid::project_L2(UniformMesh::from_width(h), GridFunction(kUnit, vals));
        const auto [lo, hi] = coefid::derivative_bracket(p);
        EXPECT_GE(lo, c_lo / 2.0) << h;
        EXPECT_LE(hi, 2.0 * (1.0 + 0.1 * M_PI)) << h;
    }
}

}  // namespace
