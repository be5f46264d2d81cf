// Command-line front end: phantoms, discrete transforms, pair validation and
// the three solvers driven by an INI experiment config.
//
// Exit status: 0 success, 1 validation above tolerance or runtime failure,
// 2 malformed input or invalid configuration, 3 degenerate problem.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>

#include "tht/experiment.hpp"
#include "tht/hilbert.hpp"
#include "tht/io.hpp"
#include "tht/phantoms.hpp"

namespace fs = std::filesystem;
using namespace tht;

namespace {

// Malformed input file or wrong grid kind; exit status 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("tht");
    logger->set_pattern("%l: %v");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("THT_LOG_LEVEL");
    const std::string level = env ? env : "info";
    if (level == "error") spdlog::set_level(spdlog::level::err);
    else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else {
        spdlog::set_level(spdlog::level::info);
        if (level != "info") spdlog::warn("THT_LOG_LEVEL='{}' not one of error, info, debug; using info", level);
    }
}

SampledFunction load_samples(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return read_samples(is);
    } catch (const parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

void save_samples(const fs::path& path, const SampledFunction& x) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_samples(os, x);
    spdlog::info("wrote {}", path.string());
}

// Overrides shared by the experiment subcommands.
struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iters;
    std::optional<double> sigma;
    std::optional<std::size_t> n;
    std::optional<std::size_t> order;
    std::optional<double> ridge;
    std::optional<std::size_t> cap;
    std::optional<std::string> guess;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "experiment INI file (defaults reproduce the N=256 run)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out, "output directory");
        cmd->add_option("--seed", seed, "noise seed");
        cmd->add_option("--iters", iters, "iteration count");
        cmd->add_option("--sigma", sigma, "noise standard deviation")->check(CLI::NonNegativeNumber);
        cmd->add_option("--N", n, "grid size");
    }

    ExperimentConfig resolve(SolverKind kind) const {
        ExperimentConfig c = config.empty() ? ExperimentConfig{} : read_config_file(config);
        c.solver = kind;
        if (out) c.output_dir = *out;
        if (seed) c.noise.seed = *seed;
        if (iters) c.iters = *iters;
        if (sigma) c.noise.sigma = *sigma;
        if (n) c.n = *n;
        if (order) c.order = *order;
        if (ridge) c.ridge = *ridge;
        if (cap) c.lagrange_cap = *cap;
        if (guess) {
            try {
                c.guess = initial_guess_from_string(*guess);
            } catch (const std::invalid_argument& e) {
                throw config_error(std::string("--guess: ") + e.what());
            }
        }
        c.validate();
        return c;
    }
};

int run_solver(const Overrides& o, SolverKind kind) {
    const ExperimentConfig cfg = o.resolve(kind);
    spdlog::info("{} on {} N={} -> {}", to_string(kind), to_string(cfg.phantom.family), cfg.n, cfg.output_dir);
    const auto res = run_experiment(cfg);
    for (std::size_t k = 0; k < res.report.ground_truth_error.size(); ++k)
        spdlog::debug("iteration {}: ground_truth_error={} data_residual={}", k,
                      format_double(res.report.ground_truth_error[k]),
                      k < res.report.data_residual.size() ? format_double(res.report.data_residual[k]) : "nan");
    for (const auto& f : res.files) spdlog::info("wrote {}", f.string());
    std::cout << "termination=" << to_string(res.report.termination) << '\n'
              << "iterations=" << res.report.iterations << '\n'
              << "final_relative_error=" << format_double(res.final_relative_error) << '\n';
    if (res.report.condition_estimate)
        std::cout << "condition_estimate=" << format_double(*res.report.condition_estimate) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Truncated Hilbert transform toolkit: Chebyshev-series transforms, phantoms and solvers"};
    app.require_subcommand(1);

    // phantom
    auto* phantom = app.add_subcommand("phantom", "write f (CGL_NODE) and F (CGL_MID) samples of a phantom pair");
    std::string ph_config, ph_family = "SEMICIRCLE_UNIT", ph_out = ".";
    std::optional<double> ph_center, ph_halfwidth, ph_eps, ph_sigma;
    std::optional<std::size_t> ph_n;
    std::optional<std::uint64_t> ph_seed;
    phantom->add_option("--config", ph_config, "take phantom, N and noise from an experiment INI file")
        ->check(CLI::ExistingFile);
    phantom->add_option("--family", ph_family, "SEMICIRCLE_UNIT, SEMICIRCLE_EPS or SEMICIRCLE_SHIFTED");
    phantom->add_option("--center", ph_center);
    phantom->add_option("--halfwidth", ph_halfwidth);
    phantom->add_option("--eps", ph_eps);
    phantom->add_option("--N", ph_n, "grid size");
    phantom->add_option("--sigma", ph_sigma, "noise standard deviation")->check(CLI::NonNegativeNumber);
    phantom->add_option("--seed", ph_seed, "noise seed");
    phantom->add_option("--out", ph_out, "output directory (writes f.csv and F.csv)");

    // forward / invert
    std::string fw_in, fw_out, inv_in, inv_out;
    auto* forward = app.add_subcommand("forward", "apply M1: f samples on CGL_NODE to F samples on CGL_MID");
    forward->add_option("input", fw_in)->required()->check(CLI::ExistingFile);
    forward->add_option("output", fw_out)->required();
    auto* invert = app.add_subcommand("invert", "apply M2: F samples on CGL_MID to f samples on CGL_NODE");
    invert->add_option("input", inv_in)->required()->check(CLI::ExistingFile);
    invert->add_option("output", inv_out)->required();

    // validate
    std::string va_f, va_F;
    double va_tol = 1e-6;
    std::size_t va_points = 10;
    std::uint64_t va_seed = 1;
    auto* validate =
        app.add_subcommand("validate", "check a samples pair against principal-value quadrature of the f interpolant");
    validate->add_option("--f", va_f, "f samples (CGL_NODE)")->required()->check(CLI::ExistingFile);
    validate->add_option("--F", va_F, "F samples (CGL_MID)")->required()->check(CLI::ExistingFile);
    validate->add_option("--tol", va_tol, "maximum allowed deviation");
    validate->add_option("--points", va_points, "number of spot-checked F samples (0 = all)");
    validate->add_option("--seed", va_seed, "spot-check selection seed");

    // solvers
    Overrides ex_o, mi_o, la_o;
    auto* extrap = app.add_subcommand("extrapolate", "alternating extrapolation under condition C1");
    ex_o.attach(extrap);
    extrap->add_option("--guess", ex_o.guess, "initial F outside the known range: ZERO or LINEAR_TAPER");
    auto* minim = app.add_subcommand("minimize", "weighted least-squares coefficient estimate");
    mi_o.attach(minim);
    minim->add_option("--order", mi_o.order, "series order");
    minim->add_option("--ridge", mi_o.ridge, "ridge weight")->check(CLI::NonNegativeNumber);
    auto* lagr = app.add_subcommand("lagrange", "explicit polynomial-interpolation inversion");
    la_o.attach(lagr);
    lagr->add_option("--order", la_o.order, "series order");
    lagr->add_option("--cap", la_o.cap, "largest order accepted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*phantom) {
            ExperimentConfig cfg;
            if (!ph_config.empty()) cfg = read_config_file(ph_config);
            else {
                cfg.phantom = PhantomSpec::unit();
                cfg.phantom.family = phantom_family_from_string(ph_family);
                cfg.noise.sigma = 0.0;
            }
            if (ph_center) cfg.phantom.center = *ph_center;
            if (ph_halfwidth) cfg.phantom.halfwidth = *ph_halfwidth;
            if (ph_eps) cfg.phantom.eps = *ph_eps;
            if (ph_n) cfg.n = *ph_n;
            if (ph_sigma) cfg.noise.sigma = *ph_sigma;
            if (ph_seed) cfg.noise.seed = *ph_seed;
            if (cfg.n < 2) throw config_error("--N: must be >= 2");
            const auto pair = make_pair(cfg.phantom);
            auto [f, F] = pair.sample(cfg.n);
            if (cfg.noise.sigma > 0.0) {
                F = add_noise(F, cfg.noise.sigma, cfg.noise.seed);
                f = add_noise(f, cfg.noise.sigma, cfg.noise.seed + 1);
            }
            save_samples(fs::path(ph_out) / "f.csv", f);
            save_samples(fs::path(ph_out) / "F.csv", F);
            return 0;
        }
        if (*forward) {
            const auto f = load_samples(fw_in);
            if (f.grid.kind() != GridKind::CglNode) throw input_error(fw_in + ": forward expects kind=CGL_NODE");
            save_samples(fw_out, M1(f));
            return 0;
        }
        if (*invert) {
            const auto F = load_samples(inv_in);
            if (F.grid.kind() != GridKind::CglMid) throw input_error(inv_in + ": invert expects kind=CGL_MID");
            save_samples(inv_out, M2(F));
            return 0;
        }
        if (*validate) {
            const auto f = load_samples(va_f);
            const auto F = load_samples(va_F);
            if (f.grid.kind() != GridKind::CglNode) throw input_error(va_f + ": expected kind=CGL_NODE");
            if (F.grid.kind() != GridKind::CglMid) throw input_error(va_F + ": expected kind=CGL_MID");
            const auto g = interpolate_f(f);
            std::vector<std::size_t> idx(F.grid.size());
            std::iota(idx.begin(), idx.end(), 0);
            if (va_points > 0 && va_points < idx.size()) {
                std::mt19937_64 rng(va_seed);
                std::shuffle(idx.begin(), idx.end(), rng);
                idx.resize(va_points);
                std::sort(idx.begin(), idx.end());
            }
            double worst = 0.0;
            for (std::size_t m : idx) {
                const double d = std::abs(pv_oracle(g, F.grid[m]) - F.values[m]);
                spdlog::debug("s[{}]={} deviation={}", m, format_double(F.grid[m]), format_double(d));
                worst = std::max(worst, d);
            }
            std::cout << "checked=" << idx.size() << '\n' << "max_deviation=" << format_double(worst) << '\n';
            if (!(worst <= va_tol)) {
                spdlog::error("pair deviation {} exceeds tolerance {}", format_double(worst), format_double(va_tol));
                return 1;
            }
            return 0;
        }
        if (*extrap) return run_solver(ex_o, SolverKind::Extrapolate);
        if (*minim) return run_solver(mi_o, SolverKind::Minimize);
        if (*lagr) return run_solver(la_o, SolverKind::Lagrange);
    } catch (const input_error& e) {
        spdlog::error("{}", e.what());
        return 2;
    } catch (const parse_error& e) {
        spdlog::error("{}", e.what());
        return 2;
    } catch (const config_error& e) {
        spdlog::error("config: {}", e.what());
        return 2;
    } catch (const degenerate_problem& e) {
        spdlog::error("{}", e.what());
        return 3;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
    return 0;
}
