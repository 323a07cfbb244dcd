#include "coefid/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace coefid {

const char* to_string(SmoothnessClass c) {
    switch (c) {
        case SmoothnessClass::H1: return "H1";
        case SmoothnessClass::H2: return "H2";
        case SmoothnessClass::H3: return "H3";
    }
    return "?";
}

namespace {

constexpr double kPi = std::numbers::pi;

/// Base coefficient on the unit interval: value, antiderivative from 0, class.
struct UnitFormula {
    std::function<double(double)> a;
    std::function<double(double)> A;
    SmoothnessClass cls;
};

/// |t - t0|^p - (1 - t0)^p and its antiderivative.
UnitFormula cusp(double p, SmoothnessClass cls) {
    constexpr double t0 = 0.4;
    const double top = std::pow(1.0 - t0, p);
    auto prim = [p](double t) {
        const double u = t - t0;
        const double v = std::pow(std::abs(u), p + 1.0) / (p + 1.0);
        return u < 0.0 ? -v : v;
    };
    const double prim0 = prim(0.0);
    return UnitFormula{[p, top](double t) { return std::pow(std::abs(t - t0), p) - top; },
                       [prim, prim0, top](double t) { return prim(t) - prim0 - top * t; }, cls};
}

UnitFormula unit_formula(const std::string& id) {
    if (id == "zero") return {[](double) { return 0.0; }, [](double) { return 0.0; }, SmoothnessClass::H3};
    if (id == "linear") {
        return {[](double t) { return 1.0 - t; }, [](double t) { return t - 0.5 * t * t; }, SmoothnessClass::H3};
    }
    if (id == "h1_cusp") return cusp(0.6, SmoothnessClass::H1);
    if (id == "h2_cusp") return cusp(1.6, SmoothnessClass::H2);
    if (id == "cosine") {
        return {[](double t) { return std::cos(kPi * t / 2.0); },
                [](double t) { return 2.0 / kPi * std::sin(kPi * t / 2.0); }, SmoothnessClass::H3};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown a0 formula '" + id + "'");
}

/// Unit composite phi on [0,1] with phi(0) = 0, phi(1) = 1 and derivatives up to order 4.
struct UnitComposite {
    std::array<std::function<double(double)>, 5> d;
    double min_slope;
    double max_slope;
};

UnitComposite unit_composite(const std::string& id) {
    if (id == "identity") {
        return {{[](double s) { return s; }, [](double) { return 1.0; }, [](double) { return 0.0; },
                 [](double) { return 0.0; }, [](double) { return 0.0; }},
                1.0, 1.0};
    }
    if (id == "sine") {
        constexpr double a = 0.1;
        return {{[](double s) { return s + a * std::sin(kPi * s); },
                 [](double s) { return 1.0 + a * kPi * std::cos(kPi * s); },
                 [](double s) { return -a * kPi * kPi * std::sin(kPi * s); },
                 [](double s) { return -a * kPi * kPi * kPi * std::cos(kPi * s); },
                 [](double s) { return a * kPi * kPi * kPi * kPi * std::sin(kPi * s); }},
                1.0 - a * kPi, 1.0 + a * kPi};
    }
    if (id == "quadratic") {
        return {{[](double s) { return 1.2 * s - 0.2 * s * s; }, [](double s) { return 1.2 - 0.4 * s; },
                 [](double) { return -0.4; }, [](double) { return 0.0; }, [](double) { return 0.0; }},
                0.8, 1.2};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown composite formula '" + id + "'");
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

constexpr std::uint64_t kStreamGeometry = 1;
constexpr std::uint64_t kStreamFlux = 2;

}  // namespace

ProblemInstance make_problem(const ProblemSpec& spec) {
    const Interval I(spec.lo, spec.hi);
    const double g0 = I.lo();
    const double L = I.length();
    const UnitFormula base = unit_formula(spec.a0);
    const UnitComposite phi = unit_composite(spec.composite);
    const double c = spec.c_end;

    auto a0_fn = [base, g0, L, c](double t) { return base.a((t - g0) / L) + c; };
    auto b0_fn = [base, g0, L, c](double t) { return L * base.A((t - g0) / L) + c * (t - g0); };
    auto comp_fn = [phi, g0, L](double s) { return g0 + L * phi.d[0](s); };

    // gamma is the unit-speed parametrization; all geometric variation sits in g.
    GeometryConstants k;
    k.c_g = L * phi.min_slope;
    k.cp_g = L * phi.max_slope;

    double h4 = 0.0;
    const std::size_t nq = 2001;
    for (std::size_t order = 0; order < 5; ++order) {
        const double scale = order == 0 ? 1.0 : L;
        const auto& dk = phi.d[order];
        const GridFunction q = GridFunction::sample(Interval(0.0, 1.0), nq, [&](double s) {
            const double v = order == 0 ? g0 + L * dk(s) : scale * dk(s);
            return v * v;
        });
        h4 += integrate(q);
    }

    GridFunction comp = GridFunction::sample(Interval(0.0, 1.0), spec.n, comp_fn);
    CurveComposite composite(std::move(comp), k.c_g * k.c_gamma, k.cp_g * k.cp_gamma);
    GridFunction f = composite.forward().with_values([&] {
        std::vector<double> v(spec.n);
        for (std::size_t i = 0; i < spec.n; ++i) v[i] = b0_fn(composite.forward()[i]);
        return v;
    }());

    return ProblemInstance{I,
                           GridFunction::sample(I, spec.n, a0_fn),
                           GridFunction::sample(I, spec.n, b0_fn),
                           std::move(composite),
                           std::move(f),
                           base.cls,
                           c,
                           k,
                           std::sqrt(h4),
                           a0_fn,
                           b0_fn,
                           comp_fn,
                           spec};
}

NoisyData perturb_C1(const ProblemInstance& problem, double eps, std::uint64_t seed) {
    require(eps >= 0.0, ErrorKind::InvalidArgument, "eps must be non-negative");
    const GridFunction& g = problem.composite.forward();
    std::vector<double> v(g.values());
    if (eps > 0.0) {
        auto rng = make_rng(seed, kStreamGeometry);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::array<double, 4> coef{};
        for (double& c : coef) c = normal(rng);
        const GridFunction phi = GridFunction::sample(Interval(0.0, 1.0), g.size(), [&](double s) {
            double p = 0.0;
            for (std::size_t k = 0; k < coef.size(); ++k) p += coef[k] * std::sin(static_cast<double>(k + 1) * kPi * s);
            return p;
        });
        // Unit size in the discrete W^{1,inf} surrogate that the noise budget is measured in. The
        // margin below 1 absorbs the rounding of differencing g + phi against g on fine grids.
        const double size = std::max(norm(phi, NormKind::Linf), norm(derivative(phi), NormKind::Linf));
        const double scale = eps * (1.0 - 1e-9) / size;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += scale * phi[i];
    }
    const GeometryConstants& k = problem.constants;
    CurveComposite pert(g.with_values(std::move(v)), k.c_g * k.c_gamma - eps, k.cp_g * k.cp_gamma + eps);
    return NoisyData{NoiseKind::C1Noise, std::move(pert), problem.f, eps, 0.0, seed};
}

NoisyData perturb_L2(const ProblemInstance& problem, double eps, std::uint64_t seed) {
    require(eps >= 0.0, ErrorKind::InvalidArgument, "eps must be non-negative");
    const GridFunction& g = problem.composite.forward();
    std::vector<double> v(g.values());
    if (eps > 0.0) {
        auto rng = make_rng(seed, kStreamGeometry);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<double> u(v.size());
        for (double& x : u) x = uni(rng);
        const double nu = norm(g.with_values(u), NormKind::L2);
        const double target = eps / problem.constants.c_gamma * (1.0 - 1e-9);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += u[i] * target / nu;
    }
    return NoisyData{NoiseKind::L2Noise, g.with_values(std::move(v)), problem.f, eps, 0.0, seed};
}

GridFunction perturb_flux(const ProblemInstance& problem, double delta, std::uint64_t seed) {
    require(delta >= 0.0, ErrorKind::InvalidArgument, "delta must be non-negative");
    if (delta == 0.0) return problem.f;
    auto rng = make_rng(seed, kStreamFlux);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    constexpr std::size_t kModes = 5;
    std::array<double, kModes> amp{};
    std::array<double, kModes> ph{};
    for (std::size_t k = 0; k < kModes; ++k) {
        amp[k] = normal(rng) / static_cast<double>(k + 1);
        ph[k] = phase(rng);
    }
    const GridFunction psi = GridFunction::sample(Interval(0.0, 1.0), problem.f.size(), [&](double s) {
        double p = 0.0;
        for (std::size_t k = 0; k < kModes; ++k) p += amp[k] * std::sin(static_cast<double>(k + 1) * kPi * s + ph[k]);
        return p;
    });
    return problem.f + (delta / norm(psi, NormKind::L2)) * psi;
}

NoisyData make_noisy(const ProblemInstance& problem, NoiseKind kind, double eps, double delta, std::uint64_t seed) {
    NoisyData d = kind == NoiseKind::C1Noise ? perturb_C1(problem, eps, seed) : perturb_L2(problem, eps, seed);
    d.f_perturbed = perturb_flux(problem, delta, seed);
    d.delta = delta;
    return d;
}

std::pair<double, double> c1_gaps(const CurveComposite& a, const CurveComposite& b) {
    const GridFunction diff = b.forward() - a.forward();
    return {norm(diff, NormKind::Linf), norm(derivative(diff), NormKind::Linf)};
}

}  // namespace coefid
