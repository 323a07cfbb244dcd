#pragma once

#include <cstddef>

#include "coefid/func1d.hpp"
#include "coefid/intervals.hpp"

namespace coefid {

/// w -> w - alpha * w'' on an interval, 0 < alpha < 1.
class RegularizedSecondDiff {
public:
    RegularizedSecondDiff(double alpha, Interval interval);

    double alpha() const noexcept { return alpha_; }
    const Interval& interval() const noexcept { return interval_; }

private:
    double alpha_;
    Interval interval_;
};

/// Oblique projection id - L onto W = {w in H^2 : w(g0) = 0, w'(g1) = 0}, where
/// L spans the null space of w - alpha * w''.
class WProjection {
public:
    explicit WProjection(Interval interval) : interval_(interval) {}
    const Interval& interval() const noexcept { return interval_; }

private:
    Interval interval_;
};

/// Cumulative integral from g0.
GridFunction apply_T1(const GridFunction& w);

/// w - alpha * w'' with the second-order stencils of func1d. Needs n >= 5.
GridFunction apply_T2alpha(const RegularizedSecondDiff& op, const GridFunction& w);

/// Lx(t) = A sqrt(alpha) sinh((t-g0)/sqrt(alpha)) / cosh((g1-g0)/sqrt(alpha))
///       + x(g0) cosh((t-g1)/sqrt(alpha)) / cosh((g1-g0)/sqrt(alpha)),
/// where A is x'(g1) up to O(h^2): it is chosen so that (x - Lx)'(g1) vanishes
/// exactly under the one-sided three-point stencil, which makes id - L exactly
/// idempotent on the grid. Needs n >= 5.
GridFunction apply_L(const WProjection& proj, double alpha, const GridFunction& x);

/// x - Lx.
GridFunction project_W(const WProjection& proj, double alpha, const GridFunction& x);

/// zeta o (g o gamma) on the composite's grid, using a monotone cubic (PCHIP)
/// interpolant of zeta. Throws ImageMismatch if the composite's image leaves
/// zeta's interval.
GridFunction apply_T3(const CurveComposite& c, const GridFunction& zeta);

/// zeta(z) = f((g_eps o gamma)^{-1}(z)) sampled at n_out uniform nodes of
/// common.common. n_out = 0 means f.size().
GridFunction apply_T3eps_pinv(const CurveComposite& c_eps, const IntersectionResult& common,
                              const GridFunction& f, std::size_t n_out = 0);

/// Resamples zeta_tilde onto n uniform nodes of target, zero outside
/// zeta_tilde's interval. A node whose dual cell straddles an end of that
/// interval is scaled by the covered fraction of the cell, so a cut between
/// grid nodes removes the right amount of mass. n = 0 means zeta_tilde.size().
GridFunction extend_by_zero(const GridFunction& zeta_tilde, const Interval& target, std::size_t n = 0);

}  // namespace coefid
