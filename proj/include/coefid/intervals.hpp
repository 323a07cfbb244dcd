#pragma once

#include <utility>

#include "coefid/func1d.hpp"

namespace coefid {

struct ProblemInstance;

/// Overlap of an exact image I and a perturbed image I_eps.
struct IntersectionResult {
    Interval common;                       ///< I intersected with I_eps
    Interval preimage;                     ///< [t0, t1] in [0,1] under the perturbed map
    std::pair<double, double> endpoint_gaps;  ///< |g0 - common.lo|, |g1 - common.hi|
};

/// Intersects the images of phi1 (exact) and phi2 (perturbed).
/// Requires sup|phi1 - phi2| <= eta and 2*eta < both image lengths; the latter
/// failing raises DegenerateIntersection.
IntersectionResult intersect_images(const CurveComposite& phi1, const CurveComposite& phi2, double eta);

/// min{(g1 - g0)/4, C_g/2}; admissible noise levels lie strictly below it.
double admissible_eps(double g0, double g1, double c_g);
double admissible_eps(const ProblemInstance& problem);

}  // namespace coefid
