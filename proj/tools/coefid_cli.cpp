// Command-line front end: solve, sweep and check.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coefid/experiments.hpp"
#include "coefid/properties.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

int report_error(const coefid::Error& e) {
    if (e.kind() == coefid::ErrorKind::ConfigError) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
}

void print_fit(const char* label, const coefid::NormFit& nf) {
    std::printf("%s: ", label);
    if (nf.fit) {
        std::printf("slope %.4f, r^2 %.4f over %zu deltas", nf.fit->slope, nf.fit->r_squared, nf.points);
    } else {
        std::printf("no fit (%zu deltas)", nf.points);
    }
    if (nf.excluded_delta) std::printf(", excluded saturated delta %.3g", *nf.excluded_delta);
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularized coefficient identification: reconstruction, rate sweeps and property checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<double> delta;
    std::uint64_t seed = 1;
    std::optional<unsigned> threads;
    std::uint64_t check_seed = coefid::kDefaultPropertySeed;
    std::vector<std::string> only;

    CLI::App* solve = app.add_subcommand("solve", "one reconstruction; writes a_alpha.csv");
    solve->add_option("-c,--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    solve->add_option("--delta", delta, "noise level (default: first entry of delta_list)");
    solve->add_option("--seed", seed, "noise seed");
    solve->add_option("-o,--output-dir", out_dir, "output directory (default: output_dir from the config)");

    CLI::App* sweep = app.add_subcommand("sweep", "rate study over delta_list and seeds");
    sweep->add_option("-c,--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("-o,--output-dir", out_dir, "output directory (default: output_dir from the config)");
    sweep->add_option("-j,--threads", threads, "worker threads (default: threads from the config)");

    CLI::App* check = app.add_subcommand("check", "run the operator property suite");
    check->add_option("--seed", check_seed, "random seed of the suite");
    check->add_option("--only", only, "run only the named properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (solve->parsed()) {
            const coefid::ExperimentConfig cfg = coefid::load_config(config_path);
            const double d = delta.value_or(cfg.delta_list.front());
            const coefid::SolveResult r = coefid::solve_one(cfg, d, seed);
            const std::string dir = out_dir.value_or(cfg.output_dir);
            coefid::write_solution(r, dir);
            std::printf("mode %s, alpha %.6g, delta %.6g, eps %.6g\n", coefid::to_string(cfg.mode), r.row.alpha,
                        r.row.delta, r.row.eps);
            std::printf("||a0 - a||_L2 = %.6e, ||a0 - a||_H1 = %.6e, ODE residual %.3e\n", r.row.err_l2,
                        r.row.err_h1, r.reconstruction.ode_residual);
            std::printf("wrote %s/a_alpha.csv\n", dir.c_str());
            return 0;
        }
        if (sweep->parsed()) {
            coefid::ExperimentConfig cfg = coefid::load_config(config_path);
            if (threads) cfg.threads = *threads;
            const coefid::RateReport rep = coefid::run_sweep(cfg);
            const std::string dir = out_dir.value_or(cfg.output_dir);
            coefid::write_report(rep, dir);
            for (const auto& m : rep.means) {
                std::printf("delta %.3e  alpha %.3e  mean L2 %.6e  mean H1 %.6e  (%zu seeds)\n", m.delta, m.alpha,
                            m.err_l2, m.err_h1, m.ok_seeds);
            }
            print_fit("L2", rep.l2);
            print_fit("H1", rep.h1);
            std::printf("wrote %s/{rates,means,summary,failures}.{csv,dat}\n", dir.c_str());
            for (const auto& f : rep.failures) {
                std::cerr << "cell delta=" << f.delta << " seed=" << f.seed << " failed: " << f.reason << '\n';
            }
            return rep.failures.empty() && rep.l2.fit && rep.h1.fit ? 0 : kExitNumerical;
        }
        if (check->parsed()) {
            const std::vector<std::string> names = only.empty() ? coefid::property_names() : only;
            bool all = true;
            for (const auto& name : names) {
                const coefid::PropertyResult r = coefid::run_property(name, check_seed);
                all = all && r.passed;
                std::printf("%s %-26s %6.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                            r.detail.c_str());
            }
            if (!all) std::cerr << "property suite: at least one check failed\n";
            return all ? 0 : kExitNumerical;
        }
    } catch (const coefid::Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
