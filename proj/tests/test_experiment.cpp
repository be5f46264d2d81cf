#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tht/experiment.hpp"

using namespace tht;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    fs::path p = fs::temp_directory_path() / "tht_tests" / (std::string(info->test_suite_name()) + "_" + info->name());
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

ExperimentConfig parse(const std::string& text) {
    std::istringstream is(text);
    return read_config(is);
}

std::string config_error_text(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const config_error& e) {
        return e.what();
    }
    return "";
}

std::vector<std::vector<double>> read_columns(const fs::path& p) {
    std::ifstream is(p);
    std::string line;
    std::getline(is, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(Config, EmptyFileGivesDefaults) {
    const auto c = parse("");
    EXPECT_EQ(c.phantom.family, PhantomFamily::SemicircleShifted);
    EXPECT_EQ(c.phantom.center, -0.1);
    EXPECT_EQ(c.phantom.halfwidth, 0.8);
    EXPECT_EQ(c.n, 256u);
    EXPECT_EQ(c.mask.F_range, (IndexRange{32, 224}));
    EXPECT_EQ(c.mask.f_range, (IndexRange{64, 192}));
    EXPECT_EQ(c.solver, SolverKind::Extrapolate);
    EXPECT_EQ(c.iters, 30u);
    EXPECT_EQ(c.guess, InitialGuess::Zero);
    EXPECT_EQ(c.noise.sigma, 0.0);
}

TEST(Config, ParsesAllSections) {
    const auto c = parse(
        "[phantom]\nfamily = SEMICIRCLE_EPS\neps = 0.3\n"
        "[grid]\nN = 128\n"
        "[mask]\nF_begin = 10\nF_end = 100\nf_begin=20\nf_end=90\n"
        "[solver]\nkind = MINIMIZE\norder = 12\nridge = 1e-8\n"
        "[noise]\nsigma = 0.02\nseed = 9\n"
        "[output]\ndir = somewhere\n");
    EXPECT_EQ(c.phantom.family, PhantomFamily::SemicircleEps);
    EXPECT_EQ(c.phantom.eps, 0.3);
    EXPECT_EQ(c.n, 128u);
    EXPECT_EQ(c.mask.F_range, (IndexRange{10, 100}));
    EXPECT_EQ(c.solver, SolverKind::Minimize);
    EXPECT_EQ(c.order, 12u);
    EXPECT_EQ(c.ridge, 1e-8);
    EXPECT_EQ(c.noise.sigma, 0.02);
    EXPECT_EQ(c.noise.seed, 9u);
    EXPECT_EQ(c.output_dir, "somewhere");
}

TEST(Config, ErrorsNameTheField) {
    EXPECT_NE(config_error_text("[grid]\nN = many\n").find("[grid] N"), std::string::npos);
    EXPECT_NE(config_error_text("[grid]\nN = 1\n").find("[grid] N"), std::string::npos);
    EXPECT_NE(config_error_text("[mask]\nF_end = 300\n").find("[mask] F_end"), std::string::npos);
    EXPECT_NE(config_error_text("[solver]\nkind = MAGIC\n").find("[solver] kind"), std::string::npos);
    EXPECT_NE(config_error_text("[solver]\nguess = ONES\n").find("[solver] guess"), std::string::npos);
    EXPECT_NE(config_error_text("[noise]\nsigma = -1\n").find("[noise] sigma"), std::string::npos);
    EXPECT_NE(config_error_text("[phantom]\nhalfwidth = 0.95\n").find("[phantom] halfwidth"), std::string::npos);
    EXPECT_NE(config_error_text("[phantom]\nfamily=SEMICIRCLE_EPS\neps = 1.5\n").find("[phantom] eps"),
              std::string::npos);
    EXPECT_NE(config_error_text("[grid]\nsize = 3\n").find("[grid] size: unknown key"), std::string::npos);
    EXPECT_NE(config_error_text("[mask]\ncondition = C2\n").find("[mask] condition"), std::string::npos);
}

TEST(Config, SyntaxErrorsCarryLine) {
    std::istringstream is("[grid]\nN = 64\n[broken\n");
    try {
        (void)read_config(is);
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Config, WriteReadRoundTrip) {
    ExperimentConfig c;
    c.solver = SolverKind::Lagrange;
    c.order = 6;
    c.interval_lo = -0.4;
    c.interval_hi = 0.5;
    c.noise = {0.01, 77};
    std::stringstream ss;
    write_config(ss, c);
    const auto back = read_config(ss);
    std::stringstream again;
    write_config(again, back);
    EXPECT_EQ(ss.str(), again.str());
    EXPECT_EQ(back.interval_lo, -0.4);
    EXPECT_EQ(back.noise.seed, 77u);
}

TEST(Experiment, DefaultRunWritesFiles) {
    ExperimentConfig c;
    c.output_dir = scratch_dir().string();
    const auto r = run_experiment(c);
    ASSERT_EQ(r.files.size(), 4u);
    for (const auto& f : r.files) EXPECT_TRUE(fs::exists(f)) << f;
    EXPECT_EQ(r.report.iterations, 30u);
    EXPECT_LT(r.final_relative_error, r.initial_relative_error);
    EXPECT_LT(r.final_relative_error, 0.05);

    const auto f = read_columns(fs::path(c.output_dir) / "f.csv");
    ASSERT_EQ(f.size(), 256u);
    EXPECT_DOUBLE_EQ(f[0][0], -255.0 / 256);
    EXPECT_DOUBLE_EQ(f[255][0], 255.0 / 256);

    const std::string manifest = slurp(fs::path(c.output_dir) / "manifest.ini");
    EXPECT_NE(manifest.find("final_relative_error=" + format_double(r.final_relative_error)), std::string::npos);
    EXPECT_NE(manifest.find("[solver]\nkind=EXTRAPOLATE"), std::string::npos);

    std::ifstream rep(fs::path(c.output_dir) / "report.csv");
    EXPECT_EQ(read_report(rep).ground_truth_error, r.report.ground_truth_error);
}

TEST(Experiment, FullMaskEstimateEqualsTruth) {
    for (SolverKind kind : {SolverKind::Extrapolate, SolverKind::Minimize}) {
        ExperimentConfig c;
        c.solver = kind;
        c.n = 64;
        c.phantom = PhantomSpec::unit();
        c.mask = KnownMask::full(64);
        c.order = 63;
        c.output_dir = (scratch_dir() / to_string(kind)).string();
        (void)run_experiment(c);
        for (const char* name : {"f.csv", "F.csv"}) {
            for (const auto& row : read_columns(fs::path(c.output_dir) / name))
                EXPECT_NEAR(row[1], row[2], 1e-9) << name << " " << to_string(kind);
        }
    }
}

TEST(Experiment, DeterministicOutput) {
    const fs::path base = scratch_dir();
    ExperimentConfig c;
    c.noise = {0.01, 5};
    c.output_dir = (base / "a").string();
    (void)run_experiment(c);
    c.output_dir = (base / "b").string();
    (void)run_experiment(c);
    for (const char* name : {"f.csv", "F.csv", "report.csv"})
        EXPECT_EQ(slurp(base / "a" / name), slurp(base / "b" / name)) << name;
}

TEST(Experiment, ManifestRerunReproduces) {
    const fs::path base = scratch_dir();
    ExperimentConfig c;
    c.noise = {0.01, 123};
    c.guess = InitialGuess::LinearTaper;
    c.iters = 12;
    c.output_dir = (base / "first").string();
    const auto r1 = run_experiment(c);

    auto again = read_config_file(base / "first" / "manifest.ini");
    again.output_dir = (base / "second").string();
    const auto r2 = run_experiment(again);
    EXPECT_EQ(r1.final_relative_error, r2.final_relative_error);
    for (const char* name : {"f.csv", "F.csv", "report.csv"})
        EXPECT_EQ(slurp(base / "first" / name), slurp(base / "second" / name)) << name;
}

TEST(Experiment, NoisyRunStaysBounded) {
    ExperimentConfig c;
    c.noise = {0.01, 2020};
    c.output_dir = scratch_dir().string();
    const auto r = run_experiment(c);
    double mx = 0.0;
    for (double v : r.f_estimate.values) mx = std::max(mx, std::abs(v));
    EXPECT_LT(mx, 8.0);  // clean phantom max is 0.8
    EXPECT_LT(r.report.data_residual.back(), r.report.data_residual.front());
}

TEST(Experiment, LagrangeAndMinimizeRuns) {
    ExperimentConfig c;
    c.phantom = PhantomSpec::unit();
    c.n = 64;
    c.mask = {{16, 48}, {8, 56}, ConditionTag::C1};
    c.order = 4;
    c.solver = SolverKind::Lagrange;
    c.output_dir = (scratch_dir() / "lag").string();
    auto r = run_experiment(c);
    EXPECT_NEAR(r.estimate_coeffs(1), 1.0, 1e-9);
    EXPECT_TRUE(r.report.condition_estimate.has_value());

    c.interval_lo = 1.5;
    c.interval_hi = 3.0;
    c.output_dir = (scratch_dir() / "lag2").string();
    r = run_experiment(c);
    EXPECT_NEAR(r.estimate_coeffs(1), 1.0, 1e-9);

    c.solver = SolverKind::Minimize;
    c.mask = {{}, {}, ConditionTag::C2};
    c.exterior_count = 20;
    c.output_dir = (scratch_dir() / "min").string();
    r = run_experiment(c);
    EXPECT_NEAR(r.estimate_coeffs(1), 1.0, 1e-9);
    EXPECT_LT(r.final_relative_error, 1e-9);
}

TEST(Experiment, DegenerateMaskSurfaces) {
    ExperimentConfig c;
    c.mask = {{0, 40}, {118, 138}, ConditionTag::C1};
    c.output_dir = scratch_dir().string();
    EXPECT_THROW((void)run_experiment(c), degenerate_problem);
}

TEST(Config, ShippedConfigsValidate) {
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(THT_CONFIG_DIR)) {
        if (entry.path().extension() != ".ini") continue;
        EXPECT_NO_THROW(read_config_file(entry.path()).validate()) << entry.path();
        ++seen;
    }
    EXPECT_GE(seen, 2u);
}
