#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tht/io.hpp"
#include "tht/series.hpp"

using namespace tht;

namespace {

ChebCoeffs unit_series(std::size_t order, std::size_t n, double v = 1.0) {
    ChebCoeffs c(order);
    c(n) = v;
    return c;
}

ChebCoeffs random_series(std::mt19937_64& rng, std::size_t order, bool pin_last) {
    auto v = oracle::random_coeffs(rng, order);
    if (pin_last) v.back() = 0.0;
    return ChebCoeffs(std::move(v));
}

}  // namespace

TEST(Grid, Layouts) {
    const Grid nodes(GridKind::CglNode, 8), mids(GridKind::CglMid, 8), uni(GridKind::Uniform, 256);
    EXPECT_EQ(nodes[0], 1.0);
    EXPECT_NEAR(nodes[4], 0.0, 1e-16);
    EXPECT_NEAR(mids[0], std::cos(0.5 * std::numbers::pi / 8), 1e-16);
    EXPECT_DOUBLE_EQ(uni[0], -255.0 / 256.0);
    EXPECT_DOUBLE_EQ(uni[255], 255.0 / 256.0);
    for (std::size_t m = 1; m < 8; ++m) {
        EXPECT_LT(nodes[m], nodes[m - 1]);
        EXPECT_LT(mids[m], mids[m - 1]);
    }
    EXPECT_THROW(Grid(GridKind::CglNode, 0), std::invalid_argument);
}

TEST(ChebCoeffs, Invariants) {
    EXPECT_THROW(ChebCoeffs(0), std::invalid_argument);
    EXPECT_THROW(ChebCoeffs(std::vector<double>{1.0, NAN}), std::invalid_argument);
    ChebCoeffs c(3);
    c(2) = 4.0;
    EXPECT_EQ(c.values()[1], 4.0);
    EXPECT_THROW((void)c(4), std::out_of_range);
}

TEST(SynthF, Examples) {
    const Grid nodes(GridKind::CglNode, 16);
    EXPECT_EQ(synth_f(unit_series(1, 1), nodes).values[0], 0.0);

    const Grid uni(GridKind::Uniform, 2);  // points -0.5, 0.5
    const auto f2 = synth_f(unit_series(2, 2), uni);
    EXPECT_NEAR(f2.values[1], std::sqrt(0.75) * 1.0, 1e-15);  // sqrt(1-t^2) * 2t at t = 0.5
    EXPECT_NEAR(f2.values[0], -std::sqrt(0.75), 1e-15);
    EXPECT_NEAR(resample_f(unit_series(1, 1), std::vector<double>{0.0})[0], 1.0, 1e-15);

    EXPECT_THROW((void)synth_f(unit_series(1, 1), Grid(GridKind::CglMid, 4)), std::invalid_argument);
}

TEST(SynthF, EndpointSamplesAreZero) {
    std::mt19937_64 rng(5);
    const auto c = random_series(rng, 40, false);
    EXPECT_EQ(synth_f(c, Grid(GridKind::CglNode, 64)).values[0], 0.0);
    EXPECT_EQ(resample_f(c, std::vector<double>{1.0, -1.0}), (std::vector<double>{0.0, 0.0}));
}

TEST(SynthF, MatchesSineSum) {
    std::mt19937_64 rng(9);
    const std::size_t N = 64;
    const auto c = random_series(rng, N, false);
    const auto f = synth_f(c, Grid(GridKind::CglNode, N));
    for (std::size_t m = 0; m < N; ++m) {
        double acc = 0.0;
        for (std::size_t n = 1; n <= N; ++n)
            acc += c(n) * std::sin(static_cast<double>(m * n) * std::numbers::pi / N);
        EXPECT_NEAR(f.values[m], acc, 1e-10);
        EXPECT_NEAR(f.values[m], oracle::f_series(std::vector<double>(c.values().begin(), c.values().end()),
                                                  f.grid[m]),
                    1e-10);
    }
}

TEST(SynthBigF, Examples) {
    const auto c1 = unit_series(1, 1);
    for (std::size_t N : {4u, 17u}) {
        for (GridKind k : {GridKind::CglNode, GridKind::CglMid, GridKind::Uniform}) {
            const Grid g(k, N);
            const auto F = synth_F(c1, g);
            for (std::size_t m = 0; m < N; ++m) EXPECT_NEAR(F.values[m], g[m], 1e-14);
        }
    }
    EXPECT_NEAR(synth_F(c1, std::vector<double>{2.0})[0], 2.0 - std::sqrt(3.0), 1e-15);
    const auto z = synth_F(ChebCoeffs(5), Grid(GridKind::CglMid, 8));
    for (double v : z.values) EXPECT_EQ(v, 0.0);
}

TEST(SynthBigF, MatchesCosineSum) {
    std::mt19937_64 rng(10);
    const std::size_t N = 32;
    const auto c = random_series(rng, N, false);
    const auto F = synth_F(c, Grid(GridKind::CglMid, N));
    for (std::size_t m = 0; m < N; ++m) {
        double acc = 0.0;
        for (std::size_t n = 1; n <= N; ++n)
            acc += c(n) * std::cos((m + 0.5) * static_cast<double>(n) * std::numbers::pi / N);
        EXPECT_NEAR(F.values[m], acc, 1e-10);
    }
}

TEST(Analyze, FromFExamples) {
    const std::size_t N = 64;
    const Grid mids(GridKind::CglMid, N);
    std::vector<double> v(mids.points().begin(), mids.points().end());  // F(s) = s
    const auto c = analyze_from_F(SampledFunction(mids, v, SampleRole::Transform));
    EXPECT_NEAR(c(1), 1.0, 1e-12);
    for (std::size_t n = 2; n <= N; ++n) EXPECT_LE(std::abs(c(n)), 1e-9) << n;

    const auto z = analyze_from_F(SampledFunction(mids, std::vector<double>(N, 0.0), SampleRole::Transform));
    for (double x : z.values()) EXPECT_EQ(x, 0.0);

    v[3] = NAN;
    EXPECT_THROW((void)analyze_from_F(SampledFunction(mids, v, SampleRole::Transform)), std::invalid_argument);
    EXPECT_THROW((void)analyze_from_F(SampledFunction(Grid(GridKind::CglNode, N), std::vector<double>(N),
                                                      SampleRole::Transform)),
                 std::invalid_argument);
}

TEST(Analyze, FromSmallFExamples) {
    const std::size_t N = 64;
    const Grid nodes(GridKind::CglNode, N);
    std::vector<double> v(N);
    for (std::size_t m = 0; m < N; ++m) v[m] = std::sqrt(std::max(0.0, 1.0 - nodes[m] * nodes[m]));
    const auto c = analyze_from_f(SampledFunction(nodes, v, SampleRole::Function));
    EXPECT_NEAR(c(1), 1.0, 1e-12);
    for (std::size_t n = 2; n <= N; ++n) EXPECT_LE(std::abs(c(n)), 1e-9) << n;
    EXPECT_EQ(c(N), 0.0);

    const auto z = analyze_from_f(SampledFunction(nodes, std::vector<double>(N, 0.0), SampleRole::Function));
    for (double x : z.values()) EXPECT_EQ(x, 0.0);
}

TEST(Analyze, RandomRoundTrips) {
    std::mt19937_64 rng(21);
    for (std::size_t N : {16u, 32u, 64u, 256u}) {
        const Grid nodes(GridKind::CglNode, N), mids(GridKind::CglMid, N);
        const auto c = random_series(rng, N, true);
        const auto cf = analyze_from_f(synth_f(c, nodes));
        const auto cF = analyze_from_F(synth_F(c, mids));
        for (std::size_t n = 1; n <= N; ++n) {
            EXPECT_NEAR(cf(n), c(n), 1e-9) << "N=" << N << " n=" << n;
            EXPECT_NEAR(cF(n), c(n), 1e-9) << "N=" << N << " n=" << n;
        }
    }
}

TEST(Analyze, TopModeIsInvisibleOnBothGrids) {
    const std::size_t N = 32;
    const auto top = unit_series(N, N);
    for (double v : synth_f(top, Grid(GridKind::CglNode, N)).values) EXPECT_NEAR(v, 0.0, 1e-13);
    for (double v : synth_F(top, Grid(GridKind::CglMid, N)).values) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(Analyze, CosineSynthOfAnalysisProjectsOutConstant) {
    std::mt19937_64 rng(4);
    const std::size_t N = 32;
    const Grid mids(GridKind::CglMid, N);
    auto x = oracle::random_coeffs(rng, N);
    double constant = 0.0;
    const auto c = analyze_from_F(SampledFunction(mids, x, SampleRole::Transform), TransformPath::Auto, &constant);
    const auto back = synth_F(c, mids);
    double mean = 0.0;
    for (double v : x) mean += v / N;
    EXPECT_NEAR(constant, mean, 1e-14);
    for (std::size_t m = 0; m < N; ++m) EXPECT_NEAR(back.values[m], x[m] - mean, 1e-12);
}

TEST(Transforms, FastPathMatchesNaive) {
    if (!fast_transforms_available()) GTEST_SKIP() << "built without FFTW";
    std::mt19937_64 rng(77);
    for (std::size_t N : {1u, 2u, 3u, 16u, 100u, 256u, 1000u}) {
        const ChebTransform slow(N, TransformPath::Naive), fast(N, TransformPath::Fast);
        ASSERT_TRUE(fast.uses_fast_path());
        ASSERT_FALSE(slow.uses_fast_path());
        const auto c = oracle::random_coeffs(rng, N);
        const auto x = oracle::random_coeffs(rng, N);
        EXPECT_LT(oracle::max_abs_diff(slow.sine_synth(c), fast.sine_synth(c)), 1e-10) << N;
        EXPECT_LT(oracle::max_abs_diff(slow.cosine_synth(c), fast.cosine_synth(c)), 1e-10) << N;
        EXPECT_LT(oracle::max_abs_diff(slow.sine_analyze(x), fast.sine_analyze(x)), 1e-10) << N;
        double k1 = 0, k2 = 0;
        EXPECT_LT(oracle::max_abs_diff(slow.cosine_analyze(x, &k1), fast.cosine_analyze(x, &k2)), 1e-10) << N;
        EXPECT_NEAR(k1, k2, 1e-12);
    }
}

TEST(Transforms, OrderAboveGridSizeAliases) {
    // Series longer than the grid fold back; fast and naive must agree on that too.
    std::mt19937_64 rng(78);
    const std::size_t N = 16;
    const auto c = oracle::random_coeffs(rng, 3 * N);
    const ChebTransform tr(N);
    const auto f = tr.sine_synth(c);
    const auto F = tr.cosine_synth(c);
    const Grid nodes(GridKind::CglNode, N), mids(GridKind::CglMid, N);
    for (std::size_t m = 1; m < N; ++m) EXPECT_NEAR(f[m], oracle::f_series(c, nodes[m]), 1e-12);
    for (std::size_t m = 0; m < N; ++m) EXPECT_NEAR(F[m], oracle::F_series(c, mids[m]), 1e-11);
}

TEST(Resample, RecurrenceMatchesDirect) {
    std::mt19937_64 rng(12);
    const Grid uni(GridKind::Uniform, 256);
    const auto c = random_series(rng, 256, false);
    const auto fr = synth_f(c, uni);
    const auto Fr = synth_F(c, uni);
    for (std::size_t k = 0; k < uni.size(); ++k) {
        EXPECT_NEAR(fr.values[k], eval_f(c, uni[k]), 1e-10);
        EXPECT_NEAR(Fr.values[k], eval_F(c, uni[k]), 1e-10);
    }
}

TEST(Norms, SemicircleWeighted) {
    const auto n = interval_norms([](double t) { return std::sqrt(std::max(0.0, 1 - t * t)); });
    EXPECT_NEAR(n.l2_weighted * n.l2_weighted, std::numbers::pi / 2, 1e-12);
    EXPECT_NEAR(n.l2 * n.l2, 4.0 / 3.0, 1e-6);
    const auto nc = norms(unit_series(3, 1));
    EXPECT_NEAR(nc.l2_weighted * nc.l2_weighted, std::numbers::pi / 2, 1e-12);
    const auto z = norms(ChebCoeffs(4));
    EXPECT_EQ(z.l2, 0.0);
    EXPECT_EQ(z.l2_weighted, 0.0);
}

TEST(Norms, WeightedPlancherel) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_series(rng, 32, false);
        const auto nf = norms(c);
        const auto nF = transform_norms(c);
        EXPECT_NEAR(nf.l2_weighted, nF.l2_weighted, 1e-6);
        double sum = 0.0;
        for (double v : c.values()) sum += v * v;
        EXPECT_NEAR(nf.l2_weighted * nf.l2_weighted, std::numbers::pi / 2 * sum, 1e-9 * sum);
    }
}

TEST(Norms, FullLinePlancherel) {
    // int_R F^2 ds = int_{-1}^{1} f^2 dt for the transform pair.
    EXPECT_NEAR(transform_norms(unit_series(1, 1)).l2 * transform_norms(unit_series(1, 1)).l2, 4.0 / 3.0, 1e-6);
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_series(rng, 12, false);
        EXPECT_NEAR(norms(c, 8192).l2, transform_norms(c, 8192).l2, 1e-5);
    }
}

TEST(Norms, SampledAgreesWithSeries) {
    std::mt19937_64 rng(33);
    const std::size_t N = 64;
    const auto c = random_series(rng, N / 2, false);
    const auto nf = norms(synth_f(c, Grid(GridKind::CglNode, N)));
    const auto nF = norms(synth_F(c, Grid(GridKind::CglMid, N)));
    const auto ref = norms(c);
    EXPECT_NEAR(nf.l2_weighted, ref.l2_weighted, 1e-12);
    EXPECT_NEAR(nF.l2_weighted, ref.l2_weighted, 1e-12);
}

TEST(SamplesIo, HeaderAndRows) {
    const Grid g(GridKind::CglMid, 3);
    const SampledFunction x(g, {0.1, -2.5, 1.0 / 3.0}, SampleRole::Transform);
    std::ostringstream os;
    write_samples(os, x);
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "# kind=CGL_MID N=3 role=F_SIDE");
    EXPECT_NE(text.find("\n2,"), std::string::npos);
    std::istringstream is(text);
    const auto y = read_samples(is);
    EXPECT_EQ(y.grid.kind(), GridKind::CglMid);
    EXPECT_EQ(y.role, SampleRole::Transform);
    EXPECT_EQ(y.values, x.values);  // 17 significant digits round-trip exactly
}

TEST(SamplesIo, MalformedInputReportsLine) {
    const std::string bad = "# kind=CGL_NODE N=2 role=f_SIDE\n0,1,0\n1,0.0,abc\n";
    std::istringstream is(bad);
    try {
        (void)read_samples(is);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    std::istringstream missing("# kind=CGL_NODE N=3 role=f_SIDE\n0,1,0\n");
    EXPECT_THROW((void)read_samples(missing), parse_error);
    std::istringstream header("kind=CGL_NODE\n");
    EXPECT_THROW((void)read_samples(header), parse_error);
    std::istringstream wrong_abscissa("# kind=CGL_NODE N=2 role=f_SIDE\n0,1,0\n1,0.5,0\n");
    EXPECT_THROW((void)read_samples(wrong_abscissa), parse_error);
}
