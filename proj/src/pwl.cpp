#include "coefid/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coefid/tridiagonal.hpp"

namespace coefid {

UniformMesh::UniformMesh(std::size_t cells) : cells_(cells) {
    require(cells >= 2, ErrorKind::InvalidArgument, "mesh needs at least 2 cells");
}

UniformMesh UniformMesh::from_width(double h) {
    require(h > 0.0 && h <= 0.5, ErrorKind::InvalidArgument, "mesh width must lie in (0, 1/2]");
    const double inv = 1.0 / h;
    const double r = std::round(inv);
    require(std::abs(inv - r) <= 1e-9 * r, ErrorKind::InvalidArgument, "1/h must be an integer");
    return UniformMesh(static_cast<std::size_t>(r));
}

PwlFunction::PwlFunction(UniformMesh mesh, std::vector<double> coeffs) : mesh_(mesh), coeffs_(std::move(coeffs)) {
    require(coeffs_.size() == mesh_.cells() + 1, ErrorKind::InvalidArgument, "need N+1 nodal values");
}

double PwlFunction::eval(double s) const noexcept {
    const std::size_t N = mesh_.cells();
    const double t = std::clamp(s, 0.0, 1.0) * static_cast<double>(N);
    const std::size_t k = std::min(static_cast<std::size_t>(t), N - 1);
    const double w = t - static_cast<double>(k);
    return (1.0 - w) * coeffs_[k] + w * coeffs_[k + 1];
}

GridFunction PwlFunction::sample(std::size_t n) const {
    return GridFunction::sample(Interval(0.0, 1.0), n, [this](double s) { return eval(s); });
}

std::vector<double> hat_loads(const UniformMesh& mesh, const GridFunction& w) {
    require(w.interval() == Interval(0.0, 1.0), ErrorKind::InvalidArgument, "projection data must live on [0,1]");
    const std::size_t N = mesh.cells();
    const std::size_t n = w.size();
    const double dN = static_cast<double>(N);

    // Merge grid nodes and mesh breakpoints into one sorted list of piece ends.
    std::vector<double> pts;
    pts.reserve(n + N + 1);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < n || j <= N) {
        const double a = i < n ? w.node(i) : std::numeric_limits<double>::infinity();
        const double b = j <= N ? mesh.breakpoint(j) : std::numeric_limits<double>::infinity();
        const double next = std::min(a, b);
        if (pts.empty() || next > pts.back() + 1e-15) pts.push_back(next);
        if (a <= next) ++i;
        if (b <= next) ++j;
    }

    std::vector<double> load(N + 1, 0.0);
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
        const double a = pts[p];
        const double b = pts[p + 1];
        const double m = 0.5 * (a + b);
        const std::size_t k = std::min(static_cast<std::size_t>(m * dN), N - 1);
        const double tk = mesh.breakpoint(k);
        const double xs[3] = {a, m, b};
        const double wt[3] = {1.0, 4.0, 1.0};
        double left = 0.0;
        double right = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double lam = (xs[q] - tk) * dN;
            const double v = wt[q] * w.eval(xs[q]);
            left += v * (1.0 - lam);
            right += v * lam;
        }
        load[k] += (b - a) / 6.0 * left;
        load[k + 1] += (b - a) / 6.0 * right;
    }
    return load;
}

PwlFunction project_L2(const UniformMesh& mesh, const GridFunction& w) {
    const std::size_t N = mesh.cells();
    if (w.size() - 1 < 4 * N) {
        std::ostringstream os;
        os << "grid of " << w.size() << " nodes resolves fewer than 5 nodes per cell of a " << N << "-cell mesh";
        throw Error(ErrorKind::GridTooCoarse, os.str());
    }
    const double h = mesh.h();
    std::vector<double> sub(N + 1, h / 6.0);
    std::vector<double> sup(N + 1, h / 6.0);
    std::vector<double> diag(N + 1, 2.0 * h / 3.0);
    diag.front() = h / 3.0;
    diag.back() = h / 3.0;
    return PwlFunction(mesh, solve_tridiagonal(sub, diag, sup, hat_loads(mesh, w)));
}

std::pair<double, double> inverse_inequality_check(const UniformMesh& mesh, const PwlFunction& p, int m,
                                                   double c_prime_m) {
    require(m == 0 || m == 1, ErrorKind::InvalidArgument, "inverse inequality order must be 0 or 1");
    const double h = mesh.h();
    const double factor = c_prime_m * std::pow(h, -(0.5 + m));
    const auto& c = p.coeffs();
    double worst_ratio = -1.0;
    std::pair<double, double> worst{0.0, 0.0};
    for (std::size_t k = 0; k < mesh.cells(); ++k) {
        const double a = c[k];
        const double b = c[k + 1];
        double lhs = std::max(std::abs(a), std::abs(b));
        if (m == 1) lhs = std::max(lhs, std::abs(b - a) / h);
        const double l2 = std::sqrt(h * (a * a + a * b + b * b) / 3.0);
        const double rhs = factor * l2;
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = {lhs, rhs};
        }
    }
    return worst;
}

bool check_mesh_conditions(double h, double eps, double g_norm_H4, const MeshConstants& k) {
    const double h32 = std::pow(h, 1.5);
    const bool cond_h = k.ct1 * h * h * g_norm_H4 + k.cp1 / k.c_gamma * eps <= 0.5 * k.c_g * k.c_gamma * h32;
    const bool cond_gap = k.ct0 * h * h * g_norm_H4 + k.cp0 / k.c_gamma * eps < 0.5 * h32;
    return cond_h && cond_gap;
}

double projected_sup_gap_bound(double h, double eps, double g_norm_H4, const MeshConstants& k) {
    return k.ct0 * std::pow(h, 1.5) * g_norm_H4 + k.cp0 / k.c_gamma * eps / std::sqrt(h);
}

std::pair<double, double> derivative_bracket(const PwlFunction& p) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t k = 0; k < p.mesh().cells(); ++k) {
        const double s = std::abs(p.slope(k));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return {lo, hi};
}

}  // namespace coefid
