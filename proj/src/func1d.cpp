#include "coefid/func1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coefid {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        std::ostringstream os;
        os << "interval requires finite lo < hi, got [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
}

GridFunction::GridFunction(Interval interval, std::vector<double> values)
    : interval_(interval), values_(std::move(values)) {
    require(values_.size() >= 3, ErrorKind::InvalidArgument, "grid function needs at least 3 nodes");
    for (double v : values_) {
        require(std::isfinite(v), ErrorKind::InvalidArgument, "grid function values must be finite");
    }
}

GridFunction GridFunction::sample(Interval interval, std::size_t n, const std::function<double(double)>& f) {
    require(n >= 3, ErrorKind::InvalidArgument, "grid function needs at least 3 nodes");
    std::vector<double> v(n);
    const double h = interval.length() / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (i + 1 == n) ? interval.hi() : interval.lo() + static_cast<double>(i) * h;
        v[i] = f(x);
    }
    return GridFunction(interval, std::move(v));
}

GridFunction GridFunction::zeros(Interval interval, std::size_t n) {
    return GridFunction(interval, std::vector<double>(n, 0.0));
}

double GridFunction::node(std::size_t i) const noexcept {
    if (i + 1 == values_.size()) return interval_.hi();
    return interval_.lo() + static_cast<double>(i) * spacing();
}

double GridFunction::eval(double x) const noexcept {
    const std::size_t n = values_.size();
    const double t = (x - interval_.lo()) / spacing();
    if (t <= 0.0) return values_.front();
    if (t >= static_cast<double>(n - 1)) return values_.back();
    const auto i = std::min(static_cast<std::size_t>(t), n - 2);
    const double w = t - static_cast<double>(i);
    if (w == 0.0) return values_[i];
    return (1.0 - w) * values_[i] + w * values_[i + 1];
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    require(values.size() == values_.size(), ErrorKind::InvalidArgument, "value count does not match grid");
    return GridFunction(interval_, std::move(values));
}

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    require(a.interval() == b.interval() && a.size() == b.size(), ErrorKind::InvalidArgument,
            "grid functions live on different grids");
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return a.with_values(std::move(v));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
    return a.with_values(std::move(v));
}

GridFunction operator*(double s, const GridFunction& a) {
    std::vector<double> v(a.values());
    for (double& x : v) x *= s;
    return a.with_values(std::move(v));
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

CurveComposite::CurveComposite(GridFunction forward, double deriv_lo, double deriv_hi, double rel_slack)
    : forward_(std::move(forward)), deriv_lo_(deriv_lo), deriv_hi_(deriv_hi) {
    require(forward_.interval() == Interval(0.0, 1.0), ErrorKind::InvalidArgument,
            "composite must be sampled on [0,1]");
    require(deriv_lo_ > 0.0 && deriv_lo_ <= deriv_hi_, ErrorKind::MonotonicityViolation,
            "derivative bracket needs 0 < deriv_lo <= deriv_hi");
    const auto& v = forward_.values();
    const bool inc = v.back() > v.front();
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        if (!(inc ? d > 0.0 : d < 0.0)) {
            std::ostringstream os;
            os << "composite is not strictly monotone between nodes " << i - 1 << " and " << i;
            throw Error(ErrorKind::MonotonicityViolation, os.str());
        }
    }
    const double rel_tol = rel_slack >= 0.0 ? rel_slack : 10.0 * forward_.spacing() * forward_.spacing();
    const GridFunction d = derivative(forward_);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double a = std::abs(d[i]);
        if (a < deriv_lo_ * (1.0 - rel_tol) || a > deriv_hi_ * (1.0 + rel_tol)) {
            std::ostringstream os;
            os << "composite derivative " << a << " at s=" << forward_.node(i) << " leaves the bracket ["
               << deriv_lo_ << ", " << deriv_hi_ << "]";
            throw Error(ErrorKind::MonotonicityViolation, os.str());
        }
    }
}

CurveComposite CurveComposite::measured(GridFunction forward) {
    const GridFunction d = derivative(forward);
    double lo = std::abs(d[0]);
    double hi = lo;
    for (double x : d.values()) {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }
    return CurveComposite(std::move(forward), lo, hi, 0.0);
}

Interval CurveComposite::image() const {
    const auto [mn, mx] = std::minmax_element(forward_.values().begin(), forward_.values().end());
    return Interval(*mn, *mx);
}

double integrate(const GridFunction& f) {
    const auto& v = f.values();
    const std::size_t n = v.size();
    const double h = f.spacing();
    const std::size_t m = (n % 2 == 1) ? n : n - 1;  // odd node count covered by Simpson
    double s = v[0] + v[m - 1];
    for (std::size_t i = 1; i + 1 < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
    double total = s * h / 3.0;
    if (m != n) total += 0.5 * h * (v[n - 2] + v[n - 1]);
    return total;
}

double inner(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    std::vector<double> p(a.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] * b[i];
    return integrate(a.with_values(std::move(p)));
}

GridFunction derivative(const GridFunction& f) {
    const auto& v = f.values();
    const std::size_t n = v.size();
    const double h = f.spacing();
    std::vector<double> d(n);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return f.with_values(std::move(d));
}

GridFunction second_derivative(const GridFunction& f) {
    const auto& v = f.values();
    const std::size_t n = v.size();
    require(n >= 4, ErrorKind::StencilTooSmall, "second derivative needs at least 4 nodes");
    const double h2 = f.spacing() * f.spacing();
    std::vector<double> d(n);
    d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    return f.with_values(std::move(d));
}

double norm(const GridFunction& f, NormKind kind) {
    switch (kind) {
        case NormKind::Linf: {
            double m = 0.0;
            for (double x : f.values()) m = std::max(m, std::abs(x));
            return m;
        }
        case NormKind::L2:
            return std::sqrt(std::max(0.0, inner(f, f)));
        case NormKind::H1:
        case NormKind::H2: {
            require(f.size() >= 5, ErrorKind::StencilTooSmall, "H1/H2 norms need at least 5 nodes");
            const GridFunction d1 = derivative(f);
            double s = inner(f, f) + inner(d1, d1);
            if (kind == NormKind::H2) {
                const GridFunction d2 = second_derivative(f);
                s += inner(d2, d2);
            }
            return std::sqrt(std::max(0.0, s));
        }
    }
    return 0.0;
}

GridFunction cumulative_integral(const GridFunction& f) {
    const auto& v = f.values();
    const std::size_t n = v.size();
    const double h = f.spacing();
    std::vector<double> F(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double panel;
        if (i + 2 < n) {
            panel = h / 12.0 * (5.0 * v[i] + 8.0 * v[i + 1] - v[i + 2]);
        } else {
            panel = h / 12.0 * (-v[i - 1] + 8.0 * v[i] + 5.0 * v[i + 1]);
        }
        F[i + 1] = F[i] + panel;
    }
    return f.with_values(std::move(F));
}

double invert_monotone(const GridFunction& forward, double z) {
    const auto& v = forward.values();
    const std::size_t n = v.size();
    const bool inc = v.back() > v.front();
    const double mn = inc ? v.front() : v.back();
    const double mx = inc ? v.back() : v.front();
    if (!(z >= mn && z <= mx)) {
        std::ostringstream os;
        os << "value " << z << " outside the image [" << mn << ", " << mx << "]";
        throw Error(ErrorKind::OutOfRange, os.str());
    }
    // Bisection over nodes for the bracketing segment [k, k+1].
    std::size_t lo = 0;
    std::size_t hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const bool left = inc ? (v[mid] <= z) : (v[mid] >= z);
        if (left) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Exact solve on the affine segment.
    const double d = v[hi] - v[lo];
    double w = (d != 0.0) ? (z - v[lo]) / d : 0.0;
    w = std::clamp(w, 0.0, 1.0);
    const double s0 = forward.node(lo);
    const double s1 = forward.node(hi);
    return s0 + w * (s1 - s0);
}

double invert_monotone(const CurveComposite& c, double z) { return invert_monotone(c.forward(), z); }

std::pair<double, double> sup_bound_check(const GridFunction& f, double c) {
    require(f.size() >= 5, ErrorKind::StencilTooSmall, "sup bound check needs at least 5 nodes");
    const double len = f.interval().length();
    const double cj = c * std::max(3.0, 2.0 * len + 1.0);
    return {norm(f, NormKind::Linf), cj * norm(f, NormKind::H1)};
}

}  // namespace coefid
