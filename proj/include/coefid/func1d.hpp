#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "coefid/errors.hpp"

namespace coefid {

/// Closed interval [lo, hi] with lo < hi.
class Interval {
public:
    Interval(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double length() const noexcept { return hi_ - lo_; }
    bool contains(double x, double tol = 0.0) const noexcept {
        return x >= lo_ - tol && x <= hi_ + tol;
    }
    /// True when [lo, hi] lies inside other, up to tol at each end.
    bool subset_of(const Interval& other, double tol = 0.0) const noexcept {
        return lo_ >= other.lo_ - tol && hi_ <= other.hi_ + tol;
    }
    bool operator==(const Interval& o) const noexcept { return lo_ == o.lo_ && hi_ == o.hi_; }

private:
    double lo_;
    double hi_;
};

/// Real function sampled at n >= 3 uniform nodes lo + i*(hi-lo)/(n-1).
class GridFunction {
public:
    GridFunction(Interval interval, std::vector<double> values);

    /// Sample f at the n uniform nodes of interval.
    static GridFunction sample(Interval interval, std::size_t n, const std::function<double(double)>& f);
    /// Zero function on n nodes.
    static GridFunction zeros(Interval interval, std::size_t n);

    const Interval& interval() const noexcept { return interval_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept { return interval_.length() / static_cast<double>(values_.size() - 1); }
    double node(std::size_t i) const noexcept;
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Piecewise-linear interpolant; x is clamped to the interval.
    double eval(double x) const noexcept;

    /// Same grid, new values (length must match).
    GridFunction with_values(std::vector<double> values) const;

private:
    Interval interval_;
    std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);

/// Largest nodal |a - b| on identical grids.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

/// Monotone C^1 map s -> g(gamma(s)) on [0,1] with bracketed derivative.
class CurveComposite {
public:
    /// Validates strict monotonicity and deriv_lo <= |numerical derivative| <= deriv_hi
    /// at every node up to a relative slack; throws MonotonicityViolation. A
    /// negative slack selects 10 * spacing^2, the discretization tolerance.
    CurveComposite(GridFunction forward, double deriv_lo, double deriv_hi, double rel_slack = -1.0);

    /// Bracket taken from the observed derivative range.
    static CurveComposite measured(GridFunction forward);

    const GridFunction& forward() const noexcept { return forward_; }
    double deriv_lo() const noexcept { return deriv_lo_; }
    double deriv_hi() const noexcept { return deriv_hi_; }
    bool increasing() const noexcept { return forward_[forward_.size() - 1] > forward_[0]; }
    /// [min, max] of node values.
    Interval image() const;

private:
    GridFunction forward_;
    double deriv_lo_;
    double deriv_hi_;
};

enum class NormKind { L2, H1, H2, Linf };

/// Composite Simpson rule (n odd) or Simpson plus one trapezoid panel (n even).
double integrate(const GridFunction& f);

/// Second-order first derivative: central inside, one-sided three-point at the ends.
GridFunction derivative(const GridFunction& f);

/// Second-order second derivative: central inside, one-sided four-point at the ends.
GridFunction second_derivative(const GridFunction& f);

/// L2, H1, H2 (sum of squared seminorms) or max norm. H1/H2 need n >= 5.
double norm(const GridFunction& f, NormKind kind);

/// Inner product by the same quadrature as integrate.
double inner(const GridFunction& a, const GridFunction& b);

/// Running integral from lo; each panel integrates the local quadratic interpolant.
GridFunction cumulative_integral(const GridFunction& f);

/// s in [0,1] with forward(s) = z for the piecewise-linear interpolant of forward.
/// Throws OutOfRange when z is outside [min, max] of forward.
double invert_monotone(const GridFunction& forward, double z);
double invert_monotone(const CurveComposite& c, double z);

/// Default constant for sup_bound_check; see README for its calibration.
inline constexpr double kSupBoundConstant = 1.06;

/// Returns (||f||_inf, C * max{3, 2|J|+1} * ||f||_H1).
std::pair<double, double> sup_bound_check(const GridFunction& f, double c = kSupBoundConstant);

}  // namespace coefid
