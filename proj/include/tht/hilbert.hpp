#pragma once

/// \file
/// Finite Hilbert transform on (-1,1),
///
///   F(s) = (1/pi) PV int_{-1}^{1} f(t) / (s - t) dt,
///
/// its spectral realization on Chebyshev coefficients, the discrete
/// operator pair used by the extrapolation solver, a brute-force
/// principal-value quadrature used as ground truth, and the
/// cosh-weighted variant with kernel cosh(mu (s - t)) / (s - t).

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tht/series.hpp"
#include "tht/transform.hpp"

namespace tht {

/// The Hilbert image of a coefficient series. The transform of
/// sqrt(1-t^2) U_{n-1}(t) is the extended polynomial Tx_n(s) on all of R,
/// so the forward transform keeps the coefficients and changes the basis.
class HilbertImage {
public:
    explicit HilbertImage(ChebCoeffs c) : coeffs_(std::move(c)) {}

    [[nodiscard]] const ChebCoeffs& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double operator()(double s) const { return eval_F(coeffs_, s); }
    [[nodiscard]] std::vector<double> operator()(std::span<const double> s) const {
        return resample_F(coeffs_, s);
    }
    [[nodiscard]] SampledFunction on(const Grid& grid) const { return synth_F(coeffs_, grid); }

private:
    ChebCoeffs coeffs_;
};

[[nodiscard]] inline HilbertImage fht_forward(const ChebCoeffs& c) { return HilbertImage(c); }

/// Discrete forward and inverse transforms between f on CGL_NODE and F on
/// CGL_MID for a fixed grid size:
///   forward  (M1) = cosine synthesis after sine analysis,
///   inverse  (M2) = sine synthesis after cosine analysis.
/// M2 M1 is the identity on samples whose t = 1 value is zero.
class DiscreteHilbert {
public:
    explicit DiscreteHilbert(std::size_t n, TransformPath path = TransformPath::Auto)
        : tr_(n, path), nodes_(GridKind::CglNode, n), mids_(GridKind::CglMid, n) {}

    [[nodiscard]] std::size_t size() const noexcept { return tr_.size(); }
    [[nodiscard]] const Grid& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const Grid& midpoints() const noexcept { return mids_; }
    [[nodiscard]] const ChebTransform& transform() const noexcept { return tr_; }

    [[nodiscard]] std::vector<double> forward(std::span<const double> f) const {
        return tr_.cosine_synth(tr_.sine_analyze(f));
    }
    [[nodiscard]] std::vector<double> inverse(std::span<const double> F) const {
        return tr_.sine_synth(tr_.cosine_analyze(F));
    }

    [[nodiscard]] SampledFunction forward(const SampledFunction& f) const {
        check(f, GridKind::CglNode);
        return {mids_, forward(std::span<const double>(f.values)), SampleRole::Transform};
    }
    [[nodiscard]] SampledFunction inverse(const SampledFunction& F) const {
        check(F, GridKind::CglMid);
        return {nodes_, inverse(std::span<const double>(F.values)), SampleRole::Function};
    }

private:
    void check(const SampledFunction& x, GridKind kind) const {
        if (x.grid.kind() != kind || x.grid.size() != size())
            throw std::invalid_argument("DiscreteHilbert: expected " + std::to_string(size()) +
                                        " samples on " + to_string(kind));
    }

    ChebTransform tr_;
    Grid nodes_;
    Grid mids_;
};

[[nodiscard]] inline SampledFunction M1(const SampledFunction& f) {
    return DiscreteHilbert(f.grid.size()).forward(f);
}
[[nodiscard]] inline SampledFunction M2(const SampledFunction& F) {
    return DiscreteHilbert(F.grid.size()).inverse(F);
}

/// Inversion f(t) = (1/pi) PV int F(s) sqrt((1-t^2)/(1-s^2)) / (s - t) ds on
/// CGL nodes, realized spectrally. Valid for F in the range of the transform.
[[nodiscard]] inline SampledFunction fht_inverse_formula(const SampledFunction& F) {
    detail::require_complete(F, GridKind::CglMid, "fht_inverse_formula");
    return M2(F);
}

// ---------------------------------------------------------------------------
// Brute-force principal value quadrature.

/// A function given in closed form, supported on [lo, hi] within [-1,1].
struct AnalyticFunction {
    std::function<double(double)> eval;
    double lo = -1.0;
    double hi = 1.0;

    double operator()(double t) const { return (t < lo || t > hi) ? 0.0 : eval(t); }
};

inline constexpr std::size_t kPvQuadraturePoints = 4096;

namespace detail {

// (1/pi) PV int_lo^hi g(t) / (s - t) dt where g(s) = gs. Inside the support
// g(s) w(t) / w(s) is subtracted, w(t) = sqrt((t - lo)(hi - t)), whose PV is
// known in closed form; the smooth remainder uses the midpoint rule in theta
// with t = mid + half cos(theta). Subtracting w rather than a constant keeps
// the even extension in theta smooth for g with square-root endpoint decay.
template <class G>
double pv_integral(G&& g, double gs, double lo, double hi, double s, std::size_t points) {
    if (s == lo || s == hi)
        throw std::domain_error("pv_oracle: logarithmic singularity at support endpoint s = " +
                                std::to_string(s));
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const double h = std::numbers::pi / static_cast<double>(points);
    const bool inside = s > lo && s < hi;
    const double xs = (s - mid) / half;
    const double ws = inside ? std::sqrt((1.0 - xs) * (1.0 + xs)) : 0.0;
    const double ratio = inside ? gs / ws : 0.0;
    auto remainder = [&](double t) {
        const double x = (t - mid) / half;
        return g(t) - ratio * std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    };
    double sum = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double theta = (static_cast<double>(j) + 0.5) * h;
        const double t = mid + half * std::cos(theta);
        const double jac = half * std::sin(theta);
        const double diff = s - t;
        if (!inside) {
            sum += g(t) / diff * jac;
        } else if (diff == 0.0) {
            const double eps = 1e-6 * half;
            sum += -(remainder(s + eps) - remainder(s - eps)) / (2.0 * eps) * jac;
        } else {
            sum += remainder(t) / diff * jac;
        }
    }
    sum *= h;
    if (inside) sum += std::numbers::pi * ratio * xs;
    return sum / std::numbers::pi;
}

}  // namespace detail

/// (1/pi) PV int f(t) / (s - t) dt by singularity subtraction for s inside
/// the support and plain quadrature outside it.
[[nodiscard]] inline double pv_oracle(const AnalyticFunction& f, double s,
                                      std::size_t points = kPvQuadraturePoints) {
    if (!std::isfinite(s)) throw std::domain_error("pv_oracle: non-finite abscissa");
    if (std::abs(s) == 1.0) throw std::domain_error("pv_oracle: s = +-1 is a logarithmic singularity");
    const bool inside = s > f.lo && s < f.hi;
    return detail::pv_integral([&](double t) { return f.eval(t); }, inside ? f.eval(s) : 0.0, f.lo,
                               f.hi, s, points);
}

/// Trigonometric interpolant of f-side samples on CGL_NODE (the sine series
/// through the samples), usable wherever an AnalyticFunction is expected.
[[nodiscard]] inline AnalyticFunction interpolate_f(const SampledFunction& f) {
    ChebCoeffs c = analyze_from_f(f);
    return {[c = std::move(c)](double t) { return eval_f(c, t); }, -1.0, 1.0};
}

// ---------------------------------------------------------------------------
// cosh-weighted transform.

/// Real attenuation-like parameter of the cosh kernel.
class CoshWeight {
public:
    /// cosh(300) ~ 1e130: beyond this the cosh/sinh split loses all precision.
    static constexpr double kMaxMu = 300.0;

    explicit CoshWeight(double mu) : mu_(mu) {
        if (!std::isfinite(mu) || std::abs(mu) > kMaxMu)
            throw std::domain_error("CoshWeight: |mu| must be <= " + std::to_string(kMaxMu) +
                                    ", got " + std::to_string(mu));
    }
    [[nodiscard]] double mu() const noexcept { return mu_; }

private:
    double mu_;
};

/// Series order used to project cosh(mu t) f(t) and sinh(mu t) f(t) back
/// onto the weighted U basis for an input of order K.
[[nodiscard]] inline std::size_t cosh_projection_order(std::size_t k, double mu) {
    return 4 * k + 64 + 4 * static_cast<std::size_t>(std::ceil(std::abs(mu)));
}

/// F_mu(s) = (1/pi) PV int cosh(mu (s - t)) / (s - t) f(t) dt at the given
/// abscissae, computed as cosh(mu s) H[cosh(mu .) f](s) - sinh(mu s) H[sinh(mu .) f](s).
[[nodiscard]] inline std::vector<double> cosh_fht(const ChebCoeffs& c, CoshWeight w,
                                                  std::span<const double> s) {
    const double mu = w.mu();
    const std::size_t g = cosh_projection_order(c.order(), mu);
    const ChebTransform tr(g);
    const Grid nodes(GridKind::CglNode, g);
    const std::vector<double> f = tr.sine_synth(c.values());
    std::vector<double> fc(g), fs(g);
    for (std::size_t m = 0; m < g; ++m) {
        fc[m] = std::cosh(mu * nodes[m]) * f[m];
        fs[m] = std::sinh(mu * nodes[m]) * f[m];
    }
    const ChebCoeffs cc(tr.sine_analyze(fc));
    const ChebCoeffs cs(tr.sine_analyze(fs));
    const std::vector<double> hc = resample_F(cc, s);
    const std::vector<double> hs = resample_F(cs, s);
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        out[k] = std::cosh(mu * s[k]) * hc[k] - std::sinh(mu * s[k]) * hs[k];
    return out;
}

[[nodiscard]] inline SampledFunction cosh_fht(const ChebCoeffs& c, CoshWeight w, const Grid& grid) {
    return {grid, cosh_fht(c, w, grid.points()), SampleRole::Transform};
}

/// Same, from f-side samples on CGL_NODE.
[[nodiscard]] inline SampledFunction cosh_fht(const SampledFunction& f, CoshWeight w, const Grid& grid) {
    return cosh_fht(analyze_from_f(f), w, grid);
}

/// Direct singularity-subtraction quadrature of the cosh-weighted transform.
[[nodiscard]] inline double pv_oracle_cosh(const AnalyticFunction& f, CoshWeight w, double s,
                                           std::size_t points = kPvQuadraturePoints) {
    if (std::abs(s) == 1.0) throw std::domain_error("pv_oracle_cosh: s = +-1 is singular");
    const double mu = w.mu();
    const bool inside = s > f.lo && s < f.hi;
    auto g = [&](double t) { return std::cosh(mu * (s - t)) * f.eval(t); };
    return detail::pv_integral(g, inside ? f.eval(s) : 0.0, f.lo, f.hi, s, points);
}

}  // namespace tht
