#pragma once

#include <vector>

namespace coefid {

/// Solves a tridiagonal system by forward elimination and back substitution.
/// sub[i] couples row i to unknown i-1 (sub[0] unused), sup[i] couples row i to
/// unknown i+1 (sup[n-1] unused). Throws SingularSystem on a vanishing pivot.
std::vector<double> solve_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                                      const std::vector<double>& sup, std::vector<double> rhs);

}  // namespace coefid
