#include "coefid/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

// Boost 1.74 pchip.hpp calls isnan unqualified; math.h provides ::isnan.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

namespace coefid {

RegularizedSecondDiff::RegularizedSecondDiff(double alpha, Interval interval)
    : alpha_(alpha), interval_(interval) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidArgument, "alpha must satisfy 0 < alpha < 1");
}

GridFunction apply_T1(const GridFunction& w) { return cumulative_integral(w); }

GridFunction apply_T2alpha(const RegularizedSecondDiff& op, const GridFunction& w) {
    require(w.size() >= 5, ErrorKind::StencilTooSmall, "T2alpha needs at least 5 nodes");
    const GridFunction d2 = second_derivative(w);
    std::vector<double> v(w.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] - op.alpha() * d2[i];
    return w.with_values(std::move(v));
}

GridFunction apply_L(const WProjection& proj, double alpha, const GridFunction& x) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidArgument, "alpha must satisfy 0 < alpha < 1");
    require(x.size() >= 5, ErrorKind::StencilTooSmall, "L needs at least 5 nodes");
    const std::size_t n = x.size();
    const double h = x.spacing();
    const double g0 = proj.interval().lo();
    const double g1 = proj.interval().hi();
    auto end_slope = [h, n](const std::vector<double>& v) {
        return (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    };

    // Null-space modes psi1 = sqrt(alpha) sinh((t-g0)/sqrt(alpha)) / cosh((g1-g0)/sqrt(alpha)) and
    // psi2 = cosh((t-g1)/sqrt(alpha)) / cosh((g1-g0)/sqrt(alpha)), written with non-positive
    // exponents so that small alpha cannot overflow.
    const double r = std::sqrt(alpha);
    const double big = (g1 - g0) / r;
    const double denom = 1.0 + std::exp(-2.0 * big);
    std::vector<double> psi1(n);
    std::vector<double> psi2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = x.node(i);
        const double p = (t - g0) / r;
        const double q = (t - g1) / r;
        psi1[i] = r * (std::exp(p - big) - std::exp(-p - big)) / denom;
        psi2[i] = (std::exp(q - big) + std::exp(-q - big)) / denom;
    }
    psi1[0] = 0.0;
    psi2[0] = 1.0;

    // Coefficients from the discrete conditions (Lx)(g0) = x(g0) and (Lx)'(g1) = x'(g1), both
    // measured with the grid's stencils. In the continuum psi1'(g1) = 1 and psi2'(g1) = 0, which
    // reduces this to the coefficients x'(g1) and x(g0).
    const double b = x[0];
    const double a = (end_slope(x.values()) - b * end_slope(psi2)) / end_slope(psi1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a * psi1[i] + b * psi2[i];
    return x.with_values(std::move(v));
}

GridFunction project_W(const WProjection& proj, double alpha, const GridFunction& x) {
    return x - apply_L(proj, alpha, x);
}

GridFunction apply_T3(const CurveComposite& c, const GridFunction& zeta) {
    const Interval im = c.image();
    const Interval& dom = zeta.interval();
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(dom.lo()), std::abs(dom.hi())));
    if (!im.subset_of(dom, tol)) {
        std::ostringstream os;
        os << "composite image [" << im.lo() << ", " << im.hi() << "] is not inside [" << dom.lo() << ", "
           << dom.hi() << "]";
        throw Error(ErrorKind::ImageMismatch, os.str());
    }
    const GridFunction& fwd = c.forward();
    std::vector<double> out(fwd.size());
    if (zeta.size() >= 4) {
        std::vector<double> xs(zeta.size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = zeta.node(i);
        std::vector<double> ys(zeta.values());
        const boost::math::interpolators::pchip<std::vector<double>> interp(std::move(xs), std::move(ys));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = interp(std::clamp(fwd[i], dom.lo(), dom.hi()));
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = zeta.eval(fwd[i]);
    }
    return fwd.with_values(std::move(out));
}

GridFunction apply_T3eps_pinv(const CurveComposite& c_eps, const IntersectionResult& common,
                              const GridFunction& f, std::size_t n_out) {
    require(f.interval() == Interval(0.0, 1.0), ErrorKind::InvalidArgument, "data must live on [0,1]");
    if (n_out == 0) n_out = f.size();
    return GridFunction::sample(common.common, n_out,
                                [&](double z) { return f.eval(invert_monotone(c_eps, z)); });
}

GridFunction extend_by_zero(const GridFunction& zeta_tilde, const Interval& target, std::size_t n) {
    const Interval& sub = zeta_tilde.interval();
    const double tol = 1e-12 * std::max(1.0, target.length());
    if (!sub.subset_of(target, tol)) {
        std::ostringstream os;
        os << "[" << sub.lo() << ", " << sub.hi() << "] is not inside the target [" << target.lo() << ", "
           << target.hi() << "]";
        throw Error(ErrorKind::ImageMismatch, os.str());
    }
    if (n == 0) n = zeta_tilde.size();
    const double h = target.length() / static_cast<double>(n - 1);
    return GridFunction::sample(target, n, [&](double x) {
        const double cl = std::max(x - 0.5 * h, target.lo());
        const double cr = std::min(x + 0.5 * h, target.hi());
        const double il = std::max(cl, sub.lo());
        const double ir = std::min(cr, sub.hi());
        if (ir <= il) return 0.0;
        const double covered = (ir - il) / (cr - cl);
        const double v = zeta_tilde.eval(std::clamp(x, sub.lo(), sub.hi()));
        return covered >= 1.0 ? v : covered * v;
    });
}

}  // namespace coefid
