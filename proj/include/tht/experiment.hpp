#pragma once

/// \file
/// Reproducible experiments: a phantom, a truncation mask and a solver,
/// described by an INI file, producing plot-ready text files.
///
///   [phantom]  family, center, halfwidth, eps
///   [grid]     N
///   [mask]     condition, F_begin, F_end, f_begin, f_end
///   [solver]   kind, iters, guess, ridge, order, lagrange_cap,
///              interval_lo, interval_hi, exterior_lo, exterior_hi, exterior_count
///   [noise]    sigma, seed
///   [output]   dir
///
/// Every key is optional; omitted keys take the defaults of ExperimentConfig,
/// which reproduce the N = 256 shifted-semicircle run. A written manifest
/// holds every resolved value and can be fed back as a config.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tht/io.hpp"
#include "tht/phantoms.hpp"
#include "tht/solvers.hpp"

namespace tht {

/// Invalid experiment configuration. The message names the offending field
/// as "[section] key".
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SolverKind { Extrapolate, Minimize, Lagrange };

[[nodiscard]] inline std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::Extrapolate: return "EXTRAPOLATE";
        case SolverKind::Minimize: return "MINIMIZE";
        case SolverKind::Lagrange: return "LAGRANGE";
    }
    return "?";
}

[[nodiscard]] inline SolverKind solver_kind_from_string(const std::string& s) {
    if (s == "EXTRAPOLATE") return SolverKind::Extrapolate;
    if (s == "MINIMIZE") return SolverKind::Minimize;
    if (s == "LAGRANGE") return SolverKind::Lagrange;
    throw std::invalid_argument("unknown solver '" + s + "' (expected EXTRAPOLATE, MINIMIZE or LAGRANGE)");
}

inline constexpr std::uint64_t kDefaultNoiseSeed = 20200207;

struct ExperimentConfig {
    PhantomSpec phantom = PhantomSpec::shifted(-0.1, 0.8);
    std::size_t n = 256;
    KnownMask mask{{64, 192}, {32, 224}, ConditionTag::C1};

    SolverKind solver = SolverKind::Extrapolate;
    std::size_t iters = 30;
    InitialGuess guess = InitialGuess::Zero;
    double ridge = 0.0;
    std::size_t order = 8;  // series order for MINIMIZE and LAGRANGE
    std::size_t lagrange_cap = kDefaultLagrangeCap;
    /// LAGRANGE sampling interval; NaN selects the hull of the known F range.
    double interval_lo = NAN, interval_hi = NAN;
    /// Extra F samples with |s| > 1 for MINIMIZE (C2/C3); count 0 disables.
    double exterior_lo = 1.5, exterior_hi = 3.0;
    std::size_t exterior_count = 0;

    NoiseSpec noise{0.0, kDefaultNoiseSeed};
    std::string output_dir = "out";

    /// Throws config_error naming the first invalid field.
    void validate() const;
};

namespace detail {

class IniFields {
public:
    explicit IniFields(boost::property_tree::ptree tree) : tree_(std::move(tree)) {}

    std::string text(const std::string& section, const std::string& key, const std::string& fallback) {
        used_.insert(section + "." + key);
        const auto v = tree_.get_optional<std::string>(boost::property_tree::ptree::path_type(section + "." + key));
        return v ? std::string(trim(*v)) : fallback;
    }

    double real(const std::string& section, const std::string& key, double fallback) {
        const std::string s = text(section, key, "");
        if (s.empty()) return fallback;
        try {
            return parse_double(s, 0);
        } catch (const parse_error&) {
            throw config_error(field(section, key) + ": expected a number, got '" + s + "'");
        }
    }

    std::uint64_t integer(const std::string& section, const std::string& key, std::uint64_t fallback) {
        const std::string s = text(section, key, "");
        if (s.empty()) return fallback;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw config_error(field(section, key) + ": expected a non-negative integer, got '" + s + "'");
        return v;
    }

    template <class E, class Parse>
    E choice(const std::string& section, const std::string& key, E fallback, Parse&& parse) {
        const std::string s = text(section, key, "");
        if (s.empty()) return fallback;
        try {
            return parse(s);
        } catch (const std::invalid_argument& e) {
            throw config_error(field(section, key) + ": " + e.what());
        }
    }

    /// Rejects keys that were never read, except in `ignored` sections.
    void reject_unknown(const std::set<std::string>& ignored) const {
        for (const auto& [section, body] : tree_) {
            if (ignored.count(section)) continue;
            if (body.empty() && !body.data().empty())
                throw config_error("key '" + section + "' outside any section");
            for (const auto& [key, value] : body)
                if (!used_.count(section + "." + key))
                    throw config_error(field(section, key) + ": unknown key");
        }
    }

    static std::string field(const std::string& section, const std::string& key) {
        return "[" + section + "] " + key;
    }

private:
    boost::property_tree::ptree tree_;
    std::set<std::string> used_;
};

}  // namespace detail

inline void ExperimentConfig::validate() const {
    auto fail = [](const char* section, const char* key, const std::string& why) {
        throw config_error(detail::IniFields::field(section, key) + ": " + why);
    };
    try {
        phantom.validate();
    } catch (const std::invalid_argument& e) {
        fail("phantom", phantom.family == PhantomFamily::SemicircleEps ? "eps" : "halfwidth", e.what());
    }
    if (n < 2) fail("grid", "N", "must be >= 2");
    if (n > (1u << 20)) fail("grid", "N", "must be <= 1048576");
    auto check_range = [&](const IndexRange& r, const char* b, const char* e) {
        if (r.begin > r.end) fail("mask", b, "must not exceed " + std::string(e));
        if (r.end > n) fail("mask", e, "must be <= N = " + std::to_string(n));
    };
    check_range(mask.F_range, "F_begin", "F_end");
    check_range(mask.f_range, "f_begin", "f_end");
    if (solver == SolverKind::Extrapolate) {
        if (mask.condition != ConditionTag::C1) fail("mask", "condition", "EXTRAPOLATE requires C1");
        if (mask.F_range.empty()) fail("mask", "F_end", "known F range is empty");
        if (mask.f_range.empty()) fail("mask", "f_end", "known f range is empty");
        if (iters == 0) fail("solver", "iters", "must be >= 1");
    }
    if (solver != SolverKind::Extrapolate && order == 0) fail("solver", "order", "must be >= 1");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) fail("solver", "ridge", "must be a finite number >= 0");
    if (std::isnan(interval_lo) != std::isnan(interval_hi))
        fail("solver", std::isnan(interval_lo) ? "interval_lo" : "interval_hi", "set both interval ends or neither");
    if (!std::isnan(interval_lo) && !(interval_lo < interval_hi)) fail("solver", "interval_hi", "must exceed interval_lo");
    if (solver == SolverKind::Lagrange && std::isnan(interval_lo) && mask.F_range.empty())
        fail("mask", "F_end", "LAGRANGE without an explicit interval needs a known F range");
    if (exterior_count > 0) {
        if (!(exterior_lo < exterior_hi)) fail("solver", "exterior_hi", "must exceed exterior_lo");
        if (!(exterior_lo > 1.0 || exterior_hi < -1.0))
            fail("solver", "exterior_lo", "exterior interval must lie outside [-1, 1]");
    }
    if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) fail("noise", "sigma", "must be a finite number >= 0");
    if (output_dir.empty()) fail("output", "dir", "must not be empty");
}

/// Parses an INI config; sections other than the documented ones are
/// rejected except [result], which manifests carry.
[[nodiscard]] inline ExperimentConfig read_config(std::istream& is) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw parse_error(e.message(), e.line());
    }
    detail::IniFields in(std::move(tree));
    ExperimentConfig c;
    const ExperimentConfig d;

    const auto family = in.choice("phantom", "family", d.phantom.family,
                                  [](const std::string& s) { return phantom_family_from_string(s); });
    c.phantom.family = family;
    c.phantom.center = in.real("phantom", "center", family == PhantomFamily::SemicircleShifted ? d.phantom.center : 0.0);
    c.phantom.halfwidth =
        in.real("phantom", "halfwidth", family == PhantomFamily::SemicircleShifted ? d.phantom.halfwidth : 1.0);
    c.phantom.eps = in.real("phantom", "eps", d.phantom.eps);

    c.n = in.integer("grid", "N", d.n);

    c.mask.condition = in.choice("mask", "condition", d.mask.condition,
                                 [](const std::string& s) { return condition_tag_from_string(s); });
    c.mask.F_range = {in.integer("mask", "F_begin", d.mask.F_range.begin), in.integer("mask", "F_end", d.mask.F_range.end)};
    c.mask.f_range = {in.integer("mask", "f_begin", d.mask.f_range.begin), in.integer("mask", "f_end", d.mask.f_range.end)};

    c.solver = in.choice("solver", "kind", d.solver, [](const std::string& s) { return solver_kind_from_string(s); });
    c.iters = in.integer("solver", "iters", d.iters);
    c.guess = in.choice("solver", "guess", d.guess, [](const std::string& s) { return initial_guess_from_string(s); });
    c.ridge = in.real("solver", "ridge", d.ridge);
    c.order = in.integer("solver", "order", d.order);
    c.lagrange_cap = in.integer("solver", "lagrange_cap", d.lagrange_cap);
    c.interval_lo = in.real("solver", "interval_lo", d.interval_lo);
    c.interval_hi = in.real("solver", "interval_hi", d.interval_hi);
    c.exterior_lo = in.real("solver", "exterior_lo", d.exterior_lo);
    c.exterior_hi = in.real("solver", "exterior_hi", d.exterior_hi);
    c.exterior_count = in.integer("solver", "exterior_count", d.exterior_count);

    c.noise.sigma = in.real("noise", "sigma", d.noise.sigma);
    c.noise.seed = in.integer("noise", "seed", d.noise.seed);

    c.output_dir = in.text("output", "dir", d.output_dir);

    in.reject_unknown({"result"});
    c.validate();
    return c;
}

[[nodiscard]] inline ExperimentConfig read_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file '" + path.string() + "'");
    return read_config(is);
}

/// Writes every resolved field, in the layout read_config accepts.
inline void write_config(std::ostream& os, const ExperimentConfig& c) {
    os << "[phantom]\n"
       << "family=" << to_string(c.phantom.family) << '\n'
       << "center=" << format_double(c.phantom.center) << '\n'
       << "halfwidth=" << format_double(c.phantom.halfwidth) << '\n'
       << "eps=" << format_double(c.phantom.eps) << "\n\n"
       << "[grid]\n"
       << "N=" << c.n << "\n\n"
       << "[mask]\n"
       << "condition=" << to_string(c.mask.condition) << '\n'
       << "F_begin=" << c.mask.F_range.begin << '\n'
       << "F_end=" << c.mask.F_range.end << '\n'
       << "f_begin=" << c.mask.f_range.begin << '\n'
       << "f_end=" << c.mask.f_range.end << "\n\n"
       << "[solver]\n"
       << "kind=" << to_string(c.solver) << '\n'
       << "iters=" << c.iters << '\n'
       << "guess=" << to_string(c.guess) << '\n'
       << "ridge=" << format_double(c.ridge) << '\n'
       << "order=" << c.order << '\n'
       << "lagrange_cap=" << c.lagrange_cap << '\n'
       << "interval_lo=" << format_double(c.interval_lo) << '\n'
       << "interval_hi=" << format_double(c.interval_hi) << '\n'
       << "exterior_lo=" << format_double(c.exterior_lo) << '\n'
       << "exterior_hi=" << format_double(c.exterior_hi) << '\n'
       << "exterior_count=" << c.exterior_count << "\n\n"
       << "[noise]\n"
       << "sigma=" << format_double(c.noise.sigma) << '\n'
       << "seed=" << c.noise.seed << "\n\n"
       << "[output]\n"
       << "dir=" << c.output_dir << '\n';
}

struct ExperimentResult {
    ChebCoeffs truth_coeffs;
    ChebCoeffs estimate_coeffs;
    SampledFunction f_estimate;  // CGL nodes
    SolverReport report;
    double initial_relative_error = NAN;  // extrapolation only
    double final_relative_error = NAN;    // |f_est - f| / |f| on CGL nodes
    std::vector<std::filesystem::path> files;
};

namespace detail {

inline void write_columns(const std::filesystem::path& path, const char* header, const Grid& x,
                          const std::vector<double>& a, const std::vector<double>& b) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    os << header << '\n';
    for (std::size_t k = 0; k < x.size(); ++k)
        os << format_double(x[k]) << ',' << format_double(a[k]) << ',' << format_double(b[k]) << '\n';
}

inline double relative_l2(const std::vector<double>& est, const std::vector<double>& truth) {
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < truth.size(); ++m) {
        num += (est[m] - truth[m]) * (est[m] - truth[m]);
        den += truth[m] * truth[m];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace detail

/// Runs one experiment and writes into config.output_dir:
///   f.csv          t,f_true,f_estimate on the UNIFORM display grid
///   F.csv          s,F_true,F_estimate on the UNIFORM display grid
///   report.csv     solver report
///   manifest.ini   resolved config plus a [result] section
/// Display columns come from series coefficients of the CGL samples, resampled
/// by the three-term recurrences; truth and estimate are treated alike.
/// Noise, when sigma > 0, perturbs the known F samples (seed) and the known f
/// samples (seed + 1).
[[nodiscard]] inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n;
    const HilbertPair pair = make_pair(cfg.phantom);
    const auto [f_true, F_true] = pair.sample(n);

    SampledFunction f_data = f_true, F_data = F_true;
    if (cfg.noise.sigma > 0.0) {
        F_data = add_noise(F_true, cfg.noise.sigma, cfg.noise.seed);
        f_data = add_noise(f_true, cfg.noise.sigma, cfg.noise.seed + 1);
    }

    ExperimentResult res{analyze_from_f(f_true), ChebCoeffs(1), f_true, {}, NAN, NAN, {}};
    std::vector<double> F_est_display;
    const Grid display(GridKind::Uniform, n);

    switch (cfg.solver) {
        case SolverKind::Extrapolate: {
            ExtrapolateOptions opt;
            opt.max_iters = cfg.iters;
            opt.guess = cfg.guess;
            opt.truth_f = f_true.values;
            auto r = extrapolate(f_data, F_data, cfg.mask, opt);
            res.estimate_coeffs = analyze_from_f(r.f);
            F_est_display = resample_F(analyze_from_F(r.F), display.points());
            res.f_estimate = std::move(r.f);
            res.report = std::move(r.report);
            break;
        }
        case SolverKind::Minimize: {
            CostData exterior;
            if (cfg.exterior_count > 0) {
                const double step = (cfg.exterior_hi - cfg.exterior_lo) / static_cast<double>(cfg.exterior_count);
                for (std::size_t k = 0; k < cfg.exterior_count; ++k) {
                    const double s = cfg.exterior_lo + (static_cast<double>(k) + 0.5) * step;
                    exterior.s.push_back(s);
                    exterior.F.push_back(pair.F(s));
                }
                if (cfg.noise.sigma > 0.0) {
                    std::mt19937_64 rng(cfg.noise.seed + 2);
                    std::normal_distribution<double> g(0.0, cfg.noise.sigma);
                    for (double& v : exterior.F) v += g(rng);
                }
            }
            auto r = minimize_cost(f_data, F_data, cfg.mask, cfg.order, cfg.ridge, exterior);
            res.estimate_coeffs = std::move(r.coeffs);
            res.report = std::move(r.report);
            break;
        }
        case SolverKind::Lagrange: {
            double lo = cfg.interval_lo, hi = cfg.interval_hi;
            if (std::isnan(lo)) {
                lo = F_true.grid[cfg.mask.F_range.end - 1];
                hi = F_true.grid[cfg.mask.F_range.begin];
            }
            const bool exterior = lo >= 1.0 || hi <= -1.0;
            const auto pts = exterior ? exterior_chebyshev_points(cfg.order + 1, lo, hi)
                                      : chebyshev_points(cfg.order + 1, lo, hi);
            std::vector<double> vals;
            for (double s : pts) vals.push_back(pair.F(s));
            if (cfg.noise.sigma > 0.0) {
                std::mt19937_64 rng(cfg.noise.seed);
                std::normal_distribution<double> g(0.0, cfg.noise.sigma);
                for (double& v : vals) v += g(rng);
            }
            const LagrangeOptions lopt{cfg.lagrange_cap, false};
            auto r = exterior ? lagrange_invert_C2(pts, vals, cfg.order, lopt)
                              : lagrange_invert_C1(pts, vals, cfg.order, lopt);
            res.estimate_coeffs = std::move(r.coeffs);
            res.report = std::move(r.report);
            break;
        }
    }

    if (cfg.solver != SolverKind::Extrapolate) {
        res.f_estimate = synth_f(res.estimate_coeffs, f_true.grid);
        F_est_display = resample_F(res.estimate_coeffs, display.points());
        res.report.ground_truth_error = {detail::l2_distance(res.f_estimate.values, f_true.values)};
    }
    res.final_relative_error = detail::relative_l2(res.f_estimate.values, f_true.values);
    if (cfg.solver == SolverKind::Extrapolate) {
        double norm = 0.0;
        for (double v : f_true.values) norm += v * v;
        norm = std::sqrt(norm);
        res.initial_relative_error = norm > 0.0 ? res.report.ground_truth_error.front() / norm : NAN;
    }

    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    const auto f_true_display = resample_f(res.truth_coeffs, display.points());
    const auto f_est_display = resample_f(res.estimate_coeffs, display.points());
    const auto F_true_display = resample_F(analyze_from_F(F_true), display.points());

    detail::write_columns(dir / "f.csv", "t,f_true,f_estimate", display, f_true_display, f_est_display);
    detail::write_columns(dir / "F.csv", "s,F_true,F_estimate", display, F_true_display, F_est_display);
    {
        std::ofstream os(dir / "report.csv");
        if (!os) throw std::runtime_error("cannot write report.csv");
        write_report(os, res.report);
    }
    {
        std::ofstream os(dir / "manifest.ini");
        if (!os) throw std::runtime_error("cannot write manifest.ini");
        write_config(os, cfg);
        os << "\n[result]\n"
           << "termination=" << to_string(res.report.termination) << '\n'
           << "iterations=" << res.report.iterations << '\n'
           << "initial_relative_error=" << format_double(res.initial_relative_error) << '\n'
           << "final_relative_error=" << format_double(res.final_relative_error) << '\n';
    }
    res.files = {dir / "f.csv", dir / "F.csv", dir / "report.csv", dir / "manifest.ini"};
    return res;
}

}  // namespace tht
