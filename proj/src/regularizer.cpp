#include "coefid/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coefid/intervals.hpp"
#include "coefid/operators.hpp"
#include "coefid/tridiagonal.hpp"

namespace coefid {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::ExactData: return "exact";
        case Mode::NoisyC1: return "noisy_c1";
        case Mode::NoisyL2: return "noisy_l2";
    }
    return "?";
}

void RegularizationParams::validate() const {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidArgument, "alpha must satisfy 0 < alpha < 1");
    require(mesh_h.has_value() == (mode == Mode::NoisyL2), ErrorKind::InvalidArgument,
            "mesh width is required in noisy_l2 mode and only there");
    require(shift_slack >= 0.0, ErrorKind::InvalidArgument, "shift slack must be non-negative");
}

GridFunction solve_ode(double alpha, const GridFunction& zeta) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidArgument, "alpha must satisfy 0 < alpha < 1");
    require(zeta.size() >= 5, ErrorKind::StencilTooSmall, "ODE solve needs at least 5 nodes");
    const std::size_t n = zeta.size();
    const double h = zeta.spacing();
    const double k = alpha / (h * h);

    std::vector<double> sub(n, -k);
    std::vector<double> diag(n, 1.0 + 2.0 * k);
    std::vector<double> sup(n, -k);
    std::vector<double> rhs(zeta.values());
    // b(g0) = 0.
    diag[0] = 1.0;
    sup[0] = 0.0;
    rhs[0] = 0.0;
    // b'(g1) = 0 through the ghost value b_n = b_{n-2}.
    sub[n - 1] = -2.0 * k;
    return zeta.with_values(solve_tridiagonal(sub, diag, sup, std::move(rhs)));
}

namespace {

double interior_residual(double alpha, const GridFunction& b, const GridFunction& zeta) {
    const GridFunction t = apply_T2alpha(RegularizedSecondDiff(alpha, b.interval()), b);
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < b.size(); ++i) r = std::max(r, std::abs(t[i] - zeta[i]));
    return r;
}

Reconstruction finish(const RegularizationParams& params, GridFunction zeta, double eta) {
    GridFunction b = solve_ode(params.alpha, zeta);
    const double res = interior_residual(params.alpha, b, zeta);
    std::vector<double> a = derivative(b).values();
    for (double& x : a) x += params.shift_c;
    GridFunction av = b.with_values(std::move(a));
    return Reconstruction{std::move(b), std::move(av), std::move(zeta), params, res, eta};
}

}  // namespace

Reconstruction reconstruct_exact(const ProblemInstance& problem, const RegularizationParams& params) {
    params.validate();
    const double c = params.shift_c;
    const double a_end = problem.a0[problem.a0.size() - 1];
    const double tol = std::max(params.shift_slack, 1e-10 * std::max(1.0, std::abs(c)));
    if (std::abs(a_end - c) > tol) {
        std::ostringstream os;
        os << "a0(g1) = " << a_end << " differs from shift_c = " << c << " by more than the declared slack " << tol;
        throw Error(ErrorKind::ShiftMismatch, os.str());
    }
    const double g0 = problem.interval.lo();
    std::vector<double> z(problem.b0.values());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= c * (problem.b0.node(i) - g0);
    return finish(params, problem.b0.with_values(std::move(z)), 0.0);
}

Reconstruction reconstruct_noisy(const ProblemInstance& problem, const NoisyData& noisy,
                                 const RegularizationParams& params) {
    params.validate();
    if (params.mode == Mode::ExactData) return reconstruct_exact(problem, params);
    const bool c1 = params.mode == Mode::NoisyC1;
    require(c1 == (noisy.kind == NoiseKind::C1Noise), ErrorKind::InvalidArgument,
            "reconstruction mode does not match the noise kind");

    const double eps = noisy.eps;
    const double eps_max = admissible_eps(problem);
    if (!(eps < eps_max)) {
        std::ostringstream os;
        os << "eps = " << eps << " violates eps < min{(g1-g0)/4, C_g/2} = " << eps_max;
        throw Error(ErrorKind::DegenerateIntersection, os.str());
    }

    const GeometryConstants& gc = problem.constants;
    const double lo_slope = gc.c_g * gc.c_gamma;
    const double hi_slope = gc.cp_g * gc.cp_gamma;

    // Stage 1: effective perturbed composite and the sup-gap bound eta.
    std::optional<CurveComposite> eff;
    double eta = 0.0;
    if (c1) {
        eff.emplace(noisy.composite());
        eta = eps;
    } else {
        const double h = *params.mesh_h;
        const UniformMesh mesh = UniformMesh::from_width(h);
        MeshConstants k = params.mesh_constants;
        k.c_g = gc.c_g;
        k.c_gamma = gc.c_gamma;
        const double gh4 = problem.composite_h4_norm;
        if (!check_mesh_conditions(h, eps, gh4, k)) {
            std::ostringstream os;
            os << "h = " << h << ", eps = " << eps << " violate the mesh conditions: need "
               << "Ct1 h^2 |g|_H4 + Cp1 eps / C_gamma <= C_g C_gamma h^1.5 / 2 (lhs "
               << k.ct1 * h * h * gh4 + k.cp1 / k.c_gamma * eps << ", rhs "
               << 0.5 * k.c_g * k.c_gamma * std::pow(h, 1.5) << ") and Ct0 h^2 |g|_H4 + Cp0 eps / C_gamma < "
               << "h^1.5 / 2 (lhs " << k.ct0 * h * h * gh4 + k.cp0 / k.c_gamma * eps << ", rhs "
               << 0.5 * std::pow(h, 1.5) << ")";
            throw Error(ErrorKind::MeshConditionViolated, os.str());
        }
        const PwlFunction p = project_L2(mesh, noisy.raw());
        const auto [smin, smax] = derivative_bracket(p);
        if (smin < 0.5 * lo_slope || smax > 2.0 * hi_slope) {
            std::ostringstream os;
            os << "projected composite slopes [" << smin << ", " << smax << "] leave the bracket ["
               << 0.5 * lo_slope << ", " << 2.0 * hi_slope << "]";
            throw Error(ErrorKind::MeshConditionViolated, os.str());
        }
        eff.emplace(p.sample(noisy.raw().size()), 0.5 * lo_slope, 2.0 * hi_slope);
        eta = projected_sup_gap_bound(h, eps, gh4, k);
    }

    // Shifted data f - c (composite - g0).
    const double c = params.shift_c;
    const double g0 = problem.interval.lo();
    std::vector<double> fv(noisy.f_perturbed.values());
    require(fv.size() == eff->forward().size(), ErrorKind::InvalidArgument,
            "flux data and composite use different grids");
    for (std::size_t i = 0; i < fv.size(); ++i) fv[i] -= c * (eff->forward()[i] - g0);
    const GridFunction f_used = noisy.f_perturbed.with_values(std::move(fv));

    const IntersectionResult inter = intersect_images(problem.composite, *eff, eta);
    const std::size_t n = problem.a0.size();
    const GridFunction zt = apply_T3eps_pinv(*eff, inter, f_used, n);
    GridFunction zeta = extend_by_zero(zt, problem.interval, n);

    // Stages 2 and 3.
    return finish(params, std::move(zeta), eta);
}

std::pair<double, double> reconstruction_error(const ProblemInstance& problem, const Reconstruction& rec) {
    const GridFunction e = problem.a0 - rec.a_alpha;
    return {norm(e, NormKind::L2), norm(e, NormKind::H1)};
}

}  // namespace coefid
