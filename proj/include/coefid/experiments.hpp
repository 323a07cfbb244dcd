#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coefid/datagen.hpp"
#include "coefid/pwl.hpp"
#include "coefid/regularizer.hpp"

namespace coefid {

enum class AlphaRule { Fixed, SqrtDelta, Delta, Delta23 };
enum class EpsRule { EqualDelta, Fixed };
enum class HRule { SqrtDelta, Fixed };

const char* to_string(AlphaRule r);
const char* to_string(EpsRule r);
const char* to_string(HRule r);

/// One rate study. The config file is flat `key = value` text; the keys are
///   a0, composite, interval_lo, interval_hi, c_end, n          (problem)
///   mode                       exact | noisy_c1 | noisy_l2
///   alpha_rule, alpha          fixed | sqrt_delta | delta | delta_23
///   delta_list                 strictly decreasing, comma or space separated
///   eps_rule, eps              equal_delta | fixed
///   h_rule, h                  sqrt_delta | fixed (noisy_l2 only)
///   seeds                      non-negative integers
///   output_dir, shift_c, cp0, cp1, ct0, ct1, threads, drop_saturated
/// `alpha`, `eps` and `h` are read only by the matching fixed rule.
struct ExperimentConfig {
    ProblemSpec problem{};
    Mode mode = Mode::NoisyC1;
    AlphaRule alpha_rule = AlphaRule::Delta;
    double alpha = 1e-2;
    std::vector<double> delta_list{1e-2, 1e-3, 1e-4, 1e-5};
    EpsRule eps_rule = EpsRule::EqualDelta;
    double eps = 0.0;
    HRule h_rule = HRule::SqrtDelta;
    double h = 0.1;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::string output_dir = "out";
    double shift_c = 0.0;
    MeshConstants mesh_constants{};
    unsigned threads = 0;  ///< 0 selects the hardware concurrency
    bool drop_saturated = true;

    double alpha_for(double delta) const;
    double eps_for(double delta) const;
    /// Mesh width 1/round(delta^{-1/2}) or the fixed h.
    double h_for(double delta) const;

    /// Structural checks (ordering, ranges, rule parameters); throws ConfigError.
    void validate() const;
};

/// Parses the key-value format; unknown keys and malformed values raise ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Result of one (delta, seed) cell.
struct RateRow {
    double delta;
    std::uint64_t seed;
    double alpha;
    double eps;
    double h;  ///< NaN outside noisy_l2 mode
    double err_l2;
    double err_h1;
};

/// A cell that raised; the sweep records it and continues.
struct FailedCell {
    double delta;
    std::uint64_t seed;
    ErrorKind kind;
    std::string reason;
};

/// Least-squares fit of log(err) against log(delta).
struct RateFit {
    double slope;
    double r_squared;
};

/// Seed-averaged errors for one delta.
struct MeanRow {
    double delta;
    double alpha;
    double eps;
    double h;
    double err_l2;
    double err_h1;
    std::size_t ok_seeds;
};

/// Fit of one norm after the optional exclusion of a saturated largest delta.
struct NormFit {
    std::optional<RateFit> fit;            ///< empty when fewer than three deltas remain
    std::optional<double> excluded_delta;  ///< largest delta, if dropped as saturated
    std::size_t points = 0;
};

struct RateReport {
    std::vector<RateRow> rows;       ///< successful cells, ordered by (delta, seed) as configured
    std::vector<FailedCell> failures;
    std::vector<MeanRow> means;      ///< one per delta with at least one successful seed
    NormFit l2;
    NormFit h1;
};

/// Ordinary least squares on (log delta, log err). Needs at least three pairs
/// (InsufficientData); all entries must be positive (InvalidArgument).
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs);

/// Fits (delta, err) pairs sorted by decreasing delta. With at least four pairs
/// and drop_saturated set, the largest delta is excluded when the local slope
/// between the two largest deltas is below half of the positive slope fitted on
/// the remaining pairs.
NormFit fit_with_saturation(const std::vector<std::pair<double, double>>& pairs, bool drop_saturated);

/// Outcome of a single reconstruction run from a config.
struct SolveResult {
    ProblemInstance problem;
    Reconstruction reconstruction;
    RateRow row;
};

/// Builds the problem, draws noise for (delta, seed) and reconstructs.
/// In exact mode no noise is drawn and delta only feeds the alpha rule.
SolveResult solve_one(const ExperimentConfig& config, double delta, std::uint64_t seed);
SolveResult solve_one(const ExperimentConfig& config, const ProblemInstance& problem, double delta,
                      std::uint64_t seed);

/// Runs every (delta, seed) cell, possibly in parallel, and fits the rates.
/// Throws ConfigError if the config is invalid for its problem (for example eps
/// at or above the admissible bound); per-cell numerical failures are recorded.
/// The result does not depend on the thread count.
RateReport run_sweep(const ExperimentConfig& config);

/// Writes rates.csv, means.csv, summary.csv and failures.csv into dir, each
/// with a whitespace-separated .dat twin for gnuplot.
void write_report(const RateReport& report, const std::filesystem::path& dir);

/// Writes a_alpha.csv (x,a0,a_alpha) and its .dat twin into dir.
void write_solution(const SolveResult& result, const std::filesystem::path& dir);

}  // namespace coefid
