#include "coefid/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "coefid/intervals.hpp"

namespace coefid {

const char* to_string(AlphaRule r) {
    switch (r) {
        case AlphaRule::Fixed: return "fixed";
        case AlphaRule::SqrtDelta: return "sqrt_delta";
        case AlphaRule::Delta: return "delta";
        case AlphaRule::Delta23: return "delta_23";
    }
    return "?";
}

const char* to_string(EpsRule r) {
    switch (r) {
        case EpsRule::EqualDelta: return "equal_delta";
        case EpsRule::Fixed: return "fixed";
    }
    return "?";
}

const char* to_string(HRule r) {
    switch (r) {
        case HRule::SqrtDelta: return "sqrt_delta";
        case HRule::Fixed: return "fixed";
    }
    return "?";
}

double ExperimentConfig::alpha_for(double delta) const {
    switch (alpha_rule) {
        case AlphaRule::Fixed: return alpha;
        case AlphaRule::SqrtDelta: return std::sqrt(delta);
        case AlphaRule::Delta: return delta;
        case AlphaRule::Delta23: return std::cbrt(delta * delta);
    }
    return alpha;
}

double ExperimentConfig::eps_for(double delta) const {
    return eps_rule == EpsRule::EqualDelta ? delta : eps;
}

double ExperimentConfig::h_for(double delta) const {
    if (h_rule == HRule::Fixed) return h;
    return 1.0 / std::round(1.0 / std::sqrt(delta));
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigError, what); };
    if (!(problem.lo < problem.hi) || !std::isfinite(problem.lo) || !std::isfinite(problem.hi)) {
        fail("interval_lo must be below interval_hi");
    }
    if (problem.n < 5) fail("n must be at least 5");
    if (delta_list.empty()) fail("delta_list is empty");
    for (std::size_t i = 0; i < delta_list.size(); ++i) {
        const double d = delta_list[i];
        if (!(d > 0.0) || !std::isfinite(d)) fail("delta_list entries must be positive");
        if (i > 0 && !(d < delta_list[i - 1])) fail("delta_list must be strictly decreasing");
        const double a = alpha_for(d);
        if (!(a > 0.0 && a < 1.0)) {
            std::ostringstream os;
            os << "alpha = " << a << " for delta = " << d << " is outside (0, 1)";
            fail(os.str());
        }
        if (mode == Mode::NoisyL2) {
            const double hd = h_for(d);
            try {
                (void)UniformMesh::from_width(hd);
            } catch (const Error& e) {
                fail(std::string("mesh width: ") + e.what());
            }
        }
    }
    if (eps_rule == EpsRule::Fixed && !(eps >= 0.0 && std::isfinite(eps))) fail("eps must be non-negative");
    if (seeds.empty()) fail("seeds is empty");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::string t = v;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    T x{};
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorKind::ConfigError, "key '" + key + "': cannot parse '" + v + "' as a number");
    }
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorKind::ConfigError, "key '" + key + "': expected true or false, got '" + v + "'");
}

Mode parse_mode(const std::string& v) {
    if (v == "exact") return Mode::ExactData;
    if (v == "noisy_c1") return Mode::NoisyC1;
    if (v == "noisy_l2") return Mode::NoisyL2;
    throw Error(ErrorKind::ConfigError, "mode must be exact, noisy_c1 or noisy_l2, got '" + v + "'");
}

AlphaRule parse_alpha_rule(const std::string& v) {
    if (v == "fixed") return AlphaRule::Fixed;
    if (v == "sqrt_delta") return AlphaRule::SqrtDelta;
    if (v == "delta") return AlphaRule::Delta;
    if (v == "delta_23") return AlphaRule::Delta23;
    throw Error(ErrorKind::ConfigError, "alpha_rule must be fixed, sqrt_delta, delta or delta_23, got '" + v + "'");
}

EpsRule parse_eps_rule(const std::string& v) {
    if (v == "equal_delta") return EpsRule::EqualDelta;
    if (v == "fixed") return EpsRule::Fixed;
    throw Error(ErrorKind::ConfigError, "eps_rule must be equal_delta or fixed, got '" + v + "'");
}

HRule parse_h_rule(const std::string& v) {
    if (v == "sqrt_delta") return HRule::SqrtDelta;
    if (v == "fixed") return HRule::Fixed;
    throw Error(ErrorKind::ConfigError, "h_rule must be sqrt_delta or fixed, got '" + v + "'");
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw Error(ErrorKind::ConfigError, "cannot write " + p.string());
    return os;
}

/// Writes the same table as CSV and as whitespace-separated text.
void write_table(const std::filesystem::path& dir, const std::string& stem, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::ofstream csv = open_out(dir / (stem + ".csv"));
    std::ofstream dat = open_out(dir / (stem + ".dat"));
    dat << "#";
    for (std::size_t j = 0; j < header.size(); ++j) {
        csv << (j ? "," : "") << header[j];
        dat << ' ' << header[j];
    }
    csv << '\n';
    dat << '\n';
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            csv << (j ? "," : "") << r[j];
            dat << (j ? " " : "") << r[j];
        }
        csv << '\n';
        dat << '\n';
    }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        if (v.empty()) throw Error(ErrorKind::ConfigError, "key '" + key + "' has no value");

        if (key == "a0") c.problem.a0 = v;
        else if (key == "composite") c.problem.composite = v;
        else if (key == "interval_lo") c.problem.lo = parse_number<double>(key, v);
        else if (key == "interval_hi") c.problem.hi = parse_number<double>(key, v);
        else if (key == "c_end") c.problem.c_end = parse_number<double>(key, v);
        else if (key == "n") c.problem.n = parse_number<std::size_t>(key, v);
        else if (key == "mode") c.mode = parse_mode(v);
        else if (key == "alpha_rule") c.alpha_rule = parse_alpha_rule(v);
        else if (key == "alpha") c.alpha = parse_number<double>(key, v);
        else if (key == "delta_list") {
            c.delta_list.clear();
            for (const auto& w : split_list(v)) c.delta_list.push_back(parse_number<double>(key, w));
        } else if (key == "eps_rule") c.eps_rule = parse_eps_rule(v);
        else if (key == "eps") c.eps = parse_number<double>(key, v);
        else if (key == "h_rule") c.h_rule = parse_h_rule(v);
        else if (key == "h") c.h = parse_number<double>(key, v);
        else if (key == "seeds") {
            c.seeds.clear();
            for (const auto& w : split_list(v)) c.seeds.push_back(parse_number<std::uint64_t>(key, w));
        } else if (key == "output_dir") c.output_dir = v;
        else if (key == "shift_c") c.shift_c = parse_number<double>(key, v);
        else if (key == "cp0") c.mesh_constants.cp0 = parse_number<double>(key, v);
        else if (key == "cp1") c.mesh_constants.cp1 = parse_number<double>(key, v);
        else if (key == "ct0") c.mesh_constants.ct0 = parse_number<double>(key, v);
        else if (key == "ct1") c.mesh_constants.ct1 = parse_number<double>(key, v);
        else if (key == "threads") c.threads = parse_number<unsigned>(key, v);
        else if (key == "drop_saturated") c.drop_saturated = parse_bool(key, v);
        else throw Error(ErrorKind::ConfigError, "unknown key '" + key + "' on line " + std::to_string(lineno));
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file " + path.string());
    return parse_config(in);
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
    require(pairs.size() >= 3, ErrorKind::InsufficientData,
            "rate fit needs at least 3 (delta, err) pairs, got " + std::to_string(pairs.size()));
    const double n = static_cast<double>(pairs.size());
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [d, e] : pairs) {
        require(d > 0.0 && e > 0.0, ErrorKind::InvalidArgument, "rate fit needs positive delta and err");
        sx += std::log(d);
        sy += std::log(e);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [d, e] : pairs) {
        const double dx = std::log(d) - mx;
        const double dy = std::log(e) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    require(sxx > 0.0, ErrorKind::InsufficientData, "rate fit needs at least two distinct deltas");
    const double slope = sxy / sxx;
    const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return RateFit{slope, r2};
}

NormFit fit_with_saturation(const std::vector<std::pair<double, double>>& pairs, bool drop_saturated) {
    NormFit out;
    std::vector<std::pair<double, double>> used = pairs;
    if (drop_saturated && pairs.size() >= 4) {
        const std::vector<std::pair<double, double>> rest(pairs.begin() + 1, pairs.end());
        const RateFit tail = fit_rate(rest);
        const double local =
            std::log(pairs[0].second / pairs[1].second) / std::log(pairs[0].first / pairs[1].first);
        if (tail.slope > 0.0 && local < 0.5 * tail.slope) {
            out.excluded_delta = pairs[0].first;
            used = rest;
        }
    }
    out.points = used.size();
    if (used.size() >= 3) out.fit = fit_rate(used);
    return out;
}

SolveResult solve_one(const ExperimentConfig& config, const ProblemInstance& problem, double delta,
                      std::uint64_t seed) {
    RegularizationParams params;
    params.alpha = config.alpha_for(delta);
    params.mode = config.mode;
    params.shift_c = config.shift_c;
    params.mesh_constants = config.mesh_constants;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    RateRow row{delta, seed, params.alpha, 0.0, nan, 0.0, 0.0};
    std::optional<Reconstruction> rec;
    if (config.mode == Mode::ExactData) {
        rec.emplace(reconstruct_exact(problem, params));
    } else {
        row.eps = config.eps_for(delta);
        if (config.mode == Mode::NoisyL2) {
            params.mesh_h = config.h_for(delta);
            row.h = *params.mesh_h;
        }
        const NoiseKind kind = config.mode == Mode::NoisyC1 ? NoiseKind::C1Noise : NoiseKind::L2Noise;
        const NoisyData noisy = make_noisy(problem, kind, row.eps, delta, seed);
        rec.emplace(reconstruct_noisy(problem, noisy, params));
    }
    const auto [e2, e1] = reconstruction_error(problem, *rec);
    row.err_l2 = e2;
    row.err_h1 = e1;
    return SolveResult{problem, std::move(*rec), row};
}

SolveResult solve_one(const ExperimentConfig& config, double delta, std::uint64_t seed) {
    config.validate();
    return solve_one(config, make_problem(config.problem), delta, seed);
}

RateReport run_sweep(const ExperimentConfig& config) {
    config.validate();
    std::optional<ProblemInstance> problem;
    try {
        problem.emplace(make_problem(config.problem));
    } catch (const Error& e) {
        throw Error(ErrorKind::ConfigError, std::string("problem: ") + e.what());
    }
    if (config.mode != Mode::ExactData) {
        const double bound = admissible_eps(*problem);
        for (double d : config.delta_list) {
            if (!(config.eps_for(d) < bound)) {
                std::ostringstream os;
                os << "eps = " << config.eps_for(d) << " for delta = " << d
                   << " is not below the admissible bound min{(g1-g0)/4, C_g/2} = " << bound;
                throw Error(ErrorKind::ConfigError, os.str());
            }
        }
    }

    struct Slot {
        std::optional<RateRow> row;
        std::optional<FailedCell> failure;
        std::exception_ptr unexpected;
    };
    const std::size_t nd = config.delta_list.size();
    const std::size_t ns = config.seeds.size();
    std::vector<Slot> slots(nd * ns);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < slots.size(); i = next++) {
            const double d = config.delta_list[i / ns];
            const std::uint64_t s = config.seeds[i % ns];
            try {
                slots[i].row = solve_one(config, *problem, d, s).row;
            } catch (const Error& e) {
                slots[i].failure = FailedCell{d, s, e.kind(), e.what()};
            } catch (...) {
                slots[i].unexpected = std::current_exception();
            }
        }
    };
    unsigned nt = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, slots.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
        worker();
    }

    RateReport rep;
    for (const Slot& s : slots) {
        if (s.unexpected) std::rethrow_exception(s.unexpected);
        if (s.row) rep.rows.push_back(*s.row);
        if (s.failure) rep.failures.push_back(*s.failure);
    }
    std::vector<std::pair<double, double>> p2;
    std::vector<std::pair<double, double>> p1;
    for (std::size_t k = 0; k < nd; ++k) {
        MeanRow m{config.delta_list[k], 0.0, 0.0, 0.0, 0.0, 0.0, 0};
        for (std::size_t j = 0; j < ns; ++j) {
            const Slot& s = slots[k * ns + j];
            if (!s.row) continue;
            m.alpha = s.row->alpha;
            m.eps = s.row->eps;
            m.h = s.row->h;
            m.err_l2 += s.row->err_l2;
            m.err_h1 += s.row->err_h1;
            ++m.ok_seeds;
        }
        if (m.ok_seeds == 0) continue;
        m.err_l2 /= static_cast<double>(m.ok_seeds);
        m.err_h1 /= static_cast<double>(m.ok_seeds);
        rep.means.push_back(m);
        p2.emplace_back(m.delta, m.err_l2);
        p1.emplace_back(m.delta, m.err_h1);
    }
    rep.l2 = fit_with_saturation(p2, config.drop_saturated);
    rep.h1 = fit_with_saturation(p1, config.drop_saturated);
    return rep;
}

void write_report(const RateReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::vector<std::string>> rows;
    for (const RateRow& r : report.rows) {
        rows.push_back({fmt(r.delta), std::to_string(r.seed), fmt(r.alpha), fmt(r.eps), fmt(r.h), fmt(r.err_l2),
                        fmt(r.err_h1)});
    }
    write_table(dir, "rates", {"delta", "seed", "alpha", "eps", "h", "err_l2", "err_h1"}, rows);

    rows.clear();
    for (const MeanRow& m : report.means) {
        rows.push_back({fmt(m.delta), fmt(m.alpha), fmt(m.eps), fmt(m.h), fmt(m.err_l2), fmt(m.err_h1),
                        std::to_string(m.ok_seeds)});
    }
    write_table(dir, "means", {"delta", "alpha", "eps", "h", "mean_err_l2", "mean_err_h1", "ok_seeds"}, rows);

    rows.clear();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [name, nf] : {std::pair{"l2", &report.l2}, std::pair{"h1", &report.h1}}) {
        rows.push_back({name, fmt(nf->fit ? nf->fit->slope : nan), fmt(nf->fit ? nf->fit->r_squared : nan),
                        std::to_string(nf->points), fmt(nf->excluded_delta.value_or(nan))});
    }
    write_table(dir, "summary", {"norm", "slope", "r_squared", "points", "excluded_delta"}, rows);

    std::ofstream csv = open_out(dir / "failures.csv");
    std::ofstream dat = open_out(dir / "failures.dat");
    csv << "delta,seed,kind,reason\n";
    dat << "# delta seed kind reason\n";
    for (const FailedCell& f : report.failures) {
        csv << fmt(f.delta) << ',' << f.seed << ',' << to_string(f.kind) << ',' << csv_quote(f.reason) << '\n';
        dat << fmt(f.delta) << ' ' << f.seed << ' ' << to_string(f.kind) << ' ' << csv_quote(f.reason) << '\n';
    }
}

void write_solution(const SolveResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const GridFunction& a0 = result.problem.a0;
    const GridFunction& a = result.reconstruction.a_alpha;
    std::vector<std::vector<std::string>> rows;
    rows.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rows.push_back({fmt(a.node(i)), fmt(a0[i]), fmt(a[i])});
    write_table(dir, "a_alpha", {"x", "a0", "a_alpha"}, rows);
}

}  // namespace coefid
