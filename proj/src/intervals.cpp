#include "coefid/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coefid/datagen.hpp"

namespace coefid {

IntersectionResult intersect_images(const CurveComposite& phi1, const CurveComposite& phi2, double eta) {
    require(eta >= 0.0, ErrorKind::InvalidArgument, "eta must be non-negative");
    const GridFunction& f1 = phi1.forward();
    const GridFunction& f2 = phi2.forward();

    double dist = 0.0;
    for (std::size_t i = 0; i < f1.size(); ++i) {
        dist = std::max(dist, std::abs(f1[i] - f2.eval(f1.node(i))));
    }
    for (std::size_t i = 0; i < f2.size(); ++i) {
        dist = std::max(dist, std::abs(f2[i] - f1.eval(f2.node(i))));
    }
    const double scale = std::max(1.0, std::max(norm(f1, NormKind::Linf), norm(f2, NormKind::Linf)));
    if (dist > eta + 1e-12 * scale) {
        std::ostringstream os;
        os << "sup distance " << dist << " between composites exceeds eta = " << eta;
        throw Error(ErrorKind::InvalidArgument, os.str());
    }

    const Interval im1 = phi1.image();
    const Interval im2 = phi2.image();
    if (!(2.0 * eta < std::min(im1.length(), im2.length()))) {
        std::ostringstream os;
        os << "2*eta = " << 2.0 * eta << " is not below the shorter image length "
           << std::min(im1.length(), im2.length());
        throw Error(ErrorKind::DegenerateIntersection, os.str());
    }

    const double lo = std::max(im1.lo(), im2.lo());
    const double hi = std::min(im1.hi(), im2.hi());
    require(lo < hi, ErrorKind::DegenerateIntersection, "images do not overlap");
    const Interval common(lo, hi);

    const double t_lo = invert_monotone(phi2, lo);
    const double t_hi = invert_monotone(phi2, hi);
    const Interval preimage(std::min(t_lo, t_hi), std::max(t_lo, t_hi));

    return IntersectionResult{common, preimage, {std::abs(im1.lo() - lo), std::abs(im1.hi() - hi)}};
}

double admissible_eps(double g0, double g1, double c_g) {
    return std::min((g1 - g0) / 4.0, c_g / 2.0);
}

double admissible_eps(const ProblemInstance& problem) {
    return admissible_eps(problem.interval.lo(), problem.interval.hi(), problem.constants.c_g);
}

}  // namespace coefid
