#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coefid {

/// Outcome of one randomized property check.
struct PropertyResult {
    std::string name;
    bool passed;
    std::string detail;  ///< worst observed ratios or residuals
    double seconds;
};

inline constexpr std::uint64_t kDefaultPropertySeed = 20240611;

/// Names of the checks, in suite order:
///   t1_sandwich, t2alpha_gap, t2alpha_lower_bounds, l_null_space, l_projection,
///   integration_by_parts, composition_sandwich, t3eps_bounds, sup_norm_inequality,
///   galerkin_orthogonality, projection_rate, inverse_inequality, intersection_brute_force
std::vector<std::string> property_names();

/// Runs one check; throws InvalidArgument for an unknown name. Each check draws
/// from its own random stream derived from seed and its name.
PropertyResult run_property(const std::string& name, std::uint64_t seed = kDefaultPropertySeed);

/// Runs every check in order.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed = kDefaultPropertySeed);

}  // namespace coefid
