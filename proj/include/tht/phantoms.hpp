#pragma once

/// \file
/// Closed-form Hilbert pairs used as ground truth: semicircles
///
///   f(t) = sqrt(r^2 - (t - c)^2)  on [c - r, c + r],
///   F(s) = (s - c)                                     for |s - c| <= r,
///          (s - c) - sign(s - c) sqrt((s - c)^2 - r^2)  otherwise,
///
/// in three parameterizations, plus Gaussian noise injection.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tht/hilbert.hpp"
#include "tht/series.hpp"

namespace tht {

enum class PhantomFamily { SemicircleUnit, SemicircleEps, SemicircleShifted };

[[nodiscard]] inline std::string to_string(PhantomFamily f) {
    switch (f) {
        case PhantomFamily::SemicircleUnit: return "SEMICIRCLE_UNIT";
        case PhantomFamily::SemicircleEps: return "SEMICIRCLE_EPS";
        case PhantomFamily::SemicircleShifted: return "SEMICIRCLE_SHIFTED";
    }
    return "?";
}

[[nodiscard]] inline PhantomFamily phantom_family_from_string(const std::string& s) {
    if (s == "SEMICIRCLE_UNIT") return PhantomFamily::SemicircleUnit;
    if (s == "SEMICIRCLE_EPS") return PhantomFamily::SemicircleEps;
    if (s == "SEMICIRCLE_SHIFTED") return PhantomFamily::SemicircleShifted;
    throw std::invalid_argument("unknown phantom family '" + s + "'");
}

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

struct PhantomSpec {
    PhantomFamily family = PhantomFamily::SemicircleUnit;
    double center = 0.0;     // SEMICIRCLE_SHIFTED
    double halfwidth = 1.0;  // SEMICIRCLE_SHIFTED
    double eps = 0.5;        // SEMICIRCLE_EPS
    std::optional<NoiseSpec> noise;

    [[nodiscard]] static PhantomSpec unit() { return {}; }
    [[nodiscard]] static PhantomSpec with_eps(double eps) {
        PhantomSpec p;
        p.family = PhantomFamily::SemicircleEps;
        p.eps = eps;
        return p;
    }
    [[nodiscard]] static PhantomSpec shifted(double center, double halfwidth) {
        PhantomSpec p;
        p.family = PhantomFamily::SemicircleShifted;
        p.center = center;
        p.halfwidth = halfwidth;
        return p;
    }

    /// Effective (center, radius) of the semicircle.
    [[nodiscard]] std::pair<double, double> geometry() const {
        switch (family) {
            case PhantomFamily::SemicircleUnit: return {0.0, 1.0};
            case PhantomFamily::SemicircleEps: return {0.0, eps};
            case PhantomFamily::SemicircleShifted: return {center, halfwidth};
        }
        return {0.0, 1.0};
    }

    void validate() const {
        switch (family) {
            case PhantomFamily::SemicircleUnit: break;
            case PhantomFamily::SemicircleEps:
                if (!(eps > 0.0 && eps < 1.0))
                    throw std::invalid_argument("phantom: eps must lie in (0,1), got " + std::to_string(eps));
                break;
            case PhantomFamily::SemicircleShifted:
                if (!(halfwidth > 0.0))
                    throw std::invalid_argument("phantom: halfwidth must be > 0");
                if (!(std::abs(center) + halfwidth <= 1.0))
                    throw std::invalid_argument("phantom: |center| + halfwidth must be <= 1 (support in [-1,1])");
                break;
        }
        if (noise && !(noise->sigma >= 0.0))
            throw std::invalid_argument("phantom: noise sigma must be >= 0");
    }
};

enum class Provenance { AnalyticPhantom, Synthesized };

struct HilbertPair {
    AnalyticFunction f;
    std::function<double(double)> F;
    Provenance provenance = Provenance::AnalyticPhantom;

    /// f on CGL_NODE and F on CGL_MID of size n.
    [[nodiscard]] std::pair<SampledFunction, SampledFunction> sample(std::size_t n) const {
        const Grid nodes(GridKind::CglNode, n), mids(GridKind::CglMid, n);
        std::vector<double> fv(n), Fv(n);
        for (std::size_t m = 0; m < n; ++m) {
            fv[m] = f(nodes[m]);
            Fv[m] = F(mids[m]);
        }
        return {SampledFunction(nodes, std::move(fv), SampleRole::Function),
                SampledFunction(mids, std::move(Fv), SampleRole::Transform)};
    }
};

/// Closed-form semicircle pair with center c and radius r.
[[nodiscard]] inline HilbertPair semicircle_pair(double c, double r) {
    AnalyticFunction f{[c, r](double t) {
                           const double x = t - c;
                           const double d = (r - x) * (r + x);
                           return d > 0.0 ? std::sqrt(d) : 0.0;
                       },
                       c - r, c + r};
    auto F = [c, r](double s) {
        const double x = s - c;
        if (std::abs(x) <= r) return x;
        // x - sign(x) sqrt(x^2 - r^2), written without cancellation
        const double root = std::sqrt((std::abs(x) - r) * (std::abs(x) + r));
        return (x < 0.0 ? -1.0 : 1.0) * r * r / (std::abs(x) + root);
    };
    return {std::move(f), std::move(F), Provenance::AnalyticPhantom};
}

/// Spot-checks a pair against brute-force quadrature: `interior` points in
/// (-1,1) and `exterior` points with 1 < |s| < 3. Returns the max deviation.
[[nodiscard]] inline double pair_deviation(const HilbertPair& pair, std::size_t interior = 10,
                                           std::size_t exterior = 5, std::uint64_t seed = 20200207) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> in(-0.98, 0.98), out(1.02, 3.0), sgn(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < interior + exterior; ++k) {
        double s = k < interior ? in(rng) : out(rng);
        if (k >= interior && sgn(rng) < 0.5) s = -s;
        worst = std::max(worst, std::abs(pv_oracle(pair.f, s) - pair.F(s)));
    }
    return worst;
}

inline constexpr double kPairCertificationTolerance = 1e-6;

/// Builds the closed-form pair for a spec and certifies it against the
/// quadrature oracle.
[[nodiscard]] inline HilbertPair make_pair(const PhantomSpec& spec, bool certify = true) {
    spec.validate();
    const auto [c, r] = spec.geometry();
    HilbertPair pair = semicircle_pair(c, r);
    if (certify) {
        const double dev = pair_deviation(pair);
        if (!(dev <= kPairCertificationTolerance)) {
            std::ostringstream msg;
            msg << "make_pair: " << to_string(spec.family) << " failed quadrature certification (deviation "
                << dev << ")";
            throw std::runtime_error(msg.str());
        }
    }
    return pair;
}

/// Semicircles of radius eps in eps_list: every member has F(s) = s on
/// (-eps0, eps0) while the f's differ, so transform data on an interval that
/// misses the support boundary cannot identify f.
[[nodiscard]] inline std::vector<HilbertPair> counterexample_family(double eps0,
                                                                    const std::vector<double>& eps_list) {
    if (!(eps0 > 0.0)) throw std::invalid_argument("counterexample_family: eps0 must be > 0");
    std::vector<HilbertPair> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        if (!(eps > eps0 && eps < 1.0))
            throw std::invalid_argument("counterexample_family: need eps0 < eps < 1, got eps = " +
                                        std::to_string(eps) + " with eps0 = " + std::to_string(eps0));
        out.push_back(make_pair(PhantomSpec::with_eps(eps)));
    }
    return out;
}

/// Adds i.i.d. N(0, sigma^2) perturbations; identical output for identical
/// (samples, sigma, seed) within a build.
[[nodiscard]] inline SampledFunction add_noise(const SampledFunction& x, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("add_noise: sigma must be >= 0");
    SampledFunction out = x;
    if (sigma == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& v : out.values) v += noise(rng);
    return out;
}

}  // namespace tht
