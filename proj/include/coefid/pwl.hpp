#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coefid/func1d.hpp"

namespace coefid {

/// Uniform partition of [0,1] into N >= 2 cells of width h = 1/N.
class UniformMesh {
public:
    explicit UniformMesh(std::size_t cells);
    /// Mesh with N = round(1/h); throws InvalidArgument when 1/h is not close to an integer.
    static UniformMesh from_width(double h);

    std::size_t cells() const noexcept { return cells_; }
    double h() const noexcept { return 1.0 / static_cast<double>(cells_); }
    double breakpoint(std::size_t i) const noexcept {
        return i == cells_ ? 1.0 : static_cast<double>(i) / static_cast<double>(cells_);
    }

private:
    std::size_t cells_;
};

/// Continuous piecewise-linear function given by its N+1 nodal values.
class PwlFunction {
public:
    PwlFunction(UniformMesh mesh, std::vector<double> coeffs);

    const UniformMesh& mesh() const noexcept { return mesh_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double eval(double s) const noexcept;
    double slope(std::size_t cell) const noexcept {
        return (coeffs_[cell + 1] - coeffs_[cell]) * static_cast<double>(mesh_.cells());
    }
    /// Samples on n uniform nodes of [0,1].
    GridFunction sample(std::size_t n) const;

private:
    UniformMesh mesh_;
    std::vector<double> coeffs_;
};

/// Loads <w, hat_i>, i = 0..N, for the piecewise-linear interpolant of w on [0,1].
/// Every piece between merged breakpoints is integrated by Simpson's rule,
/// which is exact for the quadratic integrand.
std::vector<double> hat_loads(const UniformMesh& mesh, const GridFunction& w);

/// L2-orthogonal projection onto continuous P1 on mesh. Needs at least five
/// grid nodes per cell (cell width >= 4 grid spacings), else GridTooCoarse.
PwlFunction project_L2(const UniformMesh& mesh, const GridFunction& w);

/// Returns (lhs, rhs) for the worst cell of ||p||_{W^{m,inf}(cell)} <=
/// C'_m h^{-(1/2+m)} ||p||_{L2(cell)}, m in {0,1}. The W^{1,inf} norm is the
/// larger of the sup norms of p and p'.
std::pair<double, double> inverse_inequality_check(const UniformMesh& mesh, const PwlFunction& p, int m,
                                                   double c_prime_m);

/// Constants entering the mesh admissibility conditions.
struct MeshConstants {
    double c_gamma = 1.0;   ///< lower bound of |gamma'|
    double c_g = 1.0;       ///< lower bound of |g'|
    double cp0 = 2.0;       ///< inverse inequality constant, m = 0
    double cp1 = 3.4641016151377544;  ///< inverse inequality constant, m = 1 (2*sqrt(3))
    double ct0 = 0.05;      ///< projection sup-error constant
    double ct1 = 0.3;       ///< projection W^{1,inf}-error constant
};

/// True iff Ct1 h^2 |g|_4 + (Cp1/Cgamma) eps <= (Cg Cgamma / 2) h^{3/2} and
/// Ct0 h^2 |g|_4 + (Cp0/Cgamma) eps < h^{3/2} / 2, with |g|_4 = g_norm_H4.
bool check_mesh_conditions(double h, double eps, double g_norm_H4, const MeshConstants& k);

/// Sup-distance bound between the exact composite and the projected perturbed one:
/// Ct0 h^{3/2} |g|_4 + (Cp0/Cgamma) eps / sqrt(h).
double projected_sup_gap_bound(double h, double eps, double g_norm_H4, const MeshConstants& k);

/// (min |cell slope|, max |cell slope|).
std::pair<double, double> derivative_bracket(const PwlFunction& p);

}  // namespace coefid
