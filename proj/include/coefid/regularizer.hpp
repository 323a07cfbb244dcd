#pragma once

#include <optional>

#include "coefid/datagen.hpp"
#include "coefid/func1d.hpp"
#include "coefid/pwl.hpp"

namespace coefid {

enum class Mode { ExactData, NoisyC1, NoisyL2 };

const char* to_string(Mode m);

/// Regularization parameter, data regime, boundary-value shift and mesh width.
struct RegularizationParams {
    double alpha = 1e-2;
    Mode mode = Mode::ExactData;
    double shift_c = 0.0;               ///< surrogate for a0(g1)
    double shift_slack = 0.0;           ///< declared bound on |a0(g1) - shift_c|
    std::optional<double> mesh_h;       ///< present iff mode == NoisyL2
    MeshConstants mesh_constants{};     ///< used only in NoisyL2 mode

    /// Throws InvalidArgument unless 0 < alpha < 1 and mesh_h matches the mode.
    void validate() const;
};

/// Output of one reconstruction.
struct Reconstruction {
    GridFunction b_alpha;
    GridFunction a_alpha;
    GridFunction zeta_used;
    RegularizationParams params;
    double ode_residual;   ///< max interior |T2alpha(b) - zeta|
    double eta;            ///< sup-gap bound used for the image intersection (0 for exact data)
};

/// Solves -alpha b'' + b = zeta, b(g0) = 0, b'(g1) = 0 by second-order finite
/// differences: a Dirichlet row at g0 and a ghost-node Neumann row at g1.
GridFunction solve_ode(double alpha, const GridFunction& zeta);

/// Reconstruction from exact data: zeta = b0 - c (x - g0), a = b' + c.
/// Throws ShiftMismatch if |a0(g1) - shift_c| exceeds the declared slack.
Reconstruction reconstruct_exact(const ProblemInstance& problem, const RegularizationParams& params);

/// Three-stage reconstruction from perturbed data; see README for the stages.
/// Throws DegenerateIntersection, MeshConditionViolated or OutOfRange, each
/// naming the violated hypothesis.
Reconstruction reconstruct_noisy(const ProblemInstance& problem, const NoisyData& noisy,
                                 const RegularizationParams& params);

/// (||a0 - a||_L2, ||a0 - a||_H1) on the problem grid.
std::pair<double, double> reconstruction_error(const ProblemInstance& problem, const Reconstruction& rec);

}  // namespace coefid
