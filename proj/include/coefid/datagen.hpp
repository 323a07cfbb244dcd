#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "coefid/func1d.hpp"

namespace coefid {

enum class SmoothnessClass { H1, H2, H3 };

const char* to_string(SmoothnessClass c);

/// Bounds C_g <= |g'| <= C'_g along the curve and C_gamma <= |gamma'| <= C'_gamma.
struct GeometryConstants {
    double c_g = 1.0;
    double cp_g = 1.0;
    double c_gamma = 1.0;
    double cp_gamma = 1.0;
};

/// Formula identifiers for a manufactured problem.
struct ProblemSpec {
    /// zero | linear | h1_cusp | h2_cusp | cosine. Each base vanishes at the
    /// right end of the interval; c_end is added on top.
    std::string a0 = "linear";
    /// identity | sine | quadratic (s -> g(gamma(s)), rescaled onto the interval).
    std::string composite = "identity";
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 2001;
    double c_end = 0.0;
};

/// Manufactured ground truth: a0, b0 = T1 a0, the composite and the exact trace f.
struct ProblemInstance {
    Interval interval;
    GridFunction a0;
    GridFunction b0;
    CurveComposite composite;
    GridFunction f;
    SmoothnessClass smoothness_class;
    double c_end;
    GeometryConstants constants;
    double composite_h4_norm;                   ///< ||g o gamma||_{H^4(0,1)}
    std::function<double(double)> a0_fn;        ///< exact a0
    std::function<double(double)> b0_fn;        ///< exact antiderivative of a0 from g0
    std::function<double(double)> composite_fn; ///< exact g o gamma
    ProblemSpec spec;
};

/// Builds the instance; throws InvalidArgument for unknown formula ids and
/// MonotonicityViolation if the composite leaves its derivative bracket.
ProblemInstance make_problem(const ProblemSpec& spec);

enum class NoiseKind { C1Noise, L2Noise };

/// Perturbed geometry and trace data with their noise levels.
struct NoisyData {
    NoiseKind kind;
    /// CurveComposite for C1 noise, raw samples on [0,1] for L2 noise.
    std::variant<CurveComposite, GridFunction> g_perturbed;
    GridFunction f_perturbed;
    double eps;
    double delta;
    std::uint64_t seed;

    const CurveComposite& composite() const { return std::get<CurveComposite>(g_perturbed); }
    const GridFunction& raw() const { return std::get<GridFunction>(g_perturbed); }
};

/// g o gamma + eps * phi with phi = sum_{k<=4} c_k sin(k pi s), random c_k, scaled so
/// the value gap and the discrete derivative gap are both at most eps.
NoisyData perturb_C1(const ProblemInstance& problem, double eps, std::uint64_t seed);

/// g o gamma + nodewise uniform noise scaled to L2 norm eps / C_gamma.
NoisyData perturb_L2(const ProblemInstance& problem, double eps, std::uint64_t seed);

/// f + smooth random trigonometric perturbation with L2 norm delta.
GridFunction perturb_flux(const ProblemInstance& problem, double delta, std::uint64_t seed);

/// Geometry noise of the given kind plus flux noise, from one seed.
NoisyData make_noisy(const ProblemInstance& problem, NoiseKind kind, double eps, double delta, std::uint64_t seed);

/// Largest value gap and largest derivative gap between two composites on the same grid.
std::pair<double, double> c1_gaps(const CurveComposite& a, const CurveComposite& b);

}  // namespace coefid
