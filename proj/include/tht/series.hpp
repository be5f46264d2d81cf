#pragma once

/// \file
/// Chebyshev coefficient sequences and their sampled representations.
///
/// A coefficient sequence c_1..c_N describes the pair
///
///   f(t) = sqrt(1 - t^2) sum_n c_n U_{n-1}(t),   t in [-1,1]
///   F(s) = sum_n c_n Tx_n(s),                    s in R
///
/// where Tx_n is the extended first-kind polynomial (cheb::T_extended).
/// Coefficients are 1-based throughout the public interface.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tht/chebyshev.hpp"
#include "tht/transform.hpp"

namespace tht {

class ChebCoeffs {
public:
    /// Zero series of the given order (>= 1).
    explicit ChebCoeffs(std::size_t order) : values_(order, 0.0) {
        if (order == 0) throw std::invalid_argument("ChebCoeffs: order must be >= 1");
    }
    /// values[0] is c_1.
    explicit ChebCoeffs(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("ChebCoeffs: order must be >= 1");
        for (double v : values_)
            if (!std::isfinite(v)) throw std::invalid_argument("ChebCoeffs: non-finite coefficient");
    }

    [[nodiscard]] std::size_t order() const noexcept { return values_.size(); }

    /// c_n, 1 <= n <= order().
    [[nodiscard]] double operator()(std::size_t n) const { return values_.at(n - 1); }
    [[nodiscard]] double& operator()(std::size_t n) { return values_.at(n - 1); }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }

    friend bool operator==(const ChebCoeffs&, const ChebCoeffs&) = default;

private:
    std::vector<double> values_;
};

enum class GridKind { CglNode, CglMid, Uniform };

[[nodiscard]] inline std::string to_string(GridKind k) {
    switch (k) {
        case GridKind::CglNode: return "CGL_NODE";
        case GridKind::CglMid: return "CGL_MID";
        case GridKind::Uniform: return "UNIFORM";
    }
    return "?";
}

[[nodiscard]] inline GridKind grid_kind_from_string(const std::string& s) {
    if (s == "CGL_NODE") return GridKind::CglNode;
    if (s == "CGL_MID") return GridKind::CglMid;
    if (s == "UNIFORM") return GridKind::Uniform;
    throw std::invalid_argument("unknown grid kind '" + s + "'");
}

/// Sample abscissae. CGL_NODE: t_m = cos(m pi / N); CGL_MID: s_m = cos((m+1/2) pi / N);
/// UNIFORM: x_k = (2k + 1 - N) / N. Indices run 0..N-1.
class Grid {
public:
    Grid(GridKind kind, std::size_t n) : kind_(kind), points_(n) {
        if (n == 0) throw std::invalid_argument("Grid: size must be >= 1");
        const double pi = std::numbers::pi;
        const double dn = static_cast<double>(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double dm = static_cast<double>(m);
            switch (kind) {
                case GridKind::CglNode: points_[m] = std::cos(dm * pi / dn); break;
                case GridKind::CglMid: points_[m] = std::cos((dm + 0.5) * pi / dn); break;
                case GridKind::Uniform: points_[m] = (2.0 * dm + 1.0 - dn) / dn; break;
            }
        }
        if (kind == GridKind::CglNode) points_[0] = 1.0;
    }

    [[nodiscard]] GridKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] double operator[](std::size_t m) const { return points_[m]; }

    /// Angle of sample m in the theta = arccos(t) variable (CGL kinds only).
    [[nodiscard]] double angle(std::size_t m) const {
        const double dn = static_cast<double>(size());
        const double dm = static_cast<double>(m);
        switch (kind_) {
            case GridKind::CglNode: return dm * std::numbers::pi / dn;
            case GridKind::CglMid: return (dm + 0.5) * std::numbers::pi / dn;
            case GridKind::Uniform: return std::acos(points_[m]);
        }
        return 0.0;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.kind_ == b.kind_ && a.size() == b.size();
    }

private:
    GridKind kind_;
    std::vector<double> points_;
};

enum class SampleRole { Transform, Function };  // F_SIDE, f_SIDE

[[nodiscard]] inline std::string to_string(SampleRole r) {
    return r == SampleRole::Transform ? "F_SIDE" : "f_SIDE";
}

[[nodiscard]] inline SampleRole sample_role_from_string(const std::string& s) {
    if (s == "F_SIDE") return SampleRole::Transform;
    if (s == "f_SIDE") return SampleRole::Function;
    throw std::invalid_argument("unknown sample role '" + s + "'");
}

struct SampledFunction {
    Grid grid;
    std::vector<double> values;
    SampleRole role;

    SampledFunction(Grid g, std::vector<double> v, SampleRole r)
        : grid(std::move(g)), values(std::move(v)), role(r) {
        if (values.size() != grid.size())
            throw std::invalid_argument("SampledFunction: " + std::to_string(values.size()) +
                                        " values for a grid of " + std::to_string(grid.size()));
    }
};

// ---------------------------------------------------------------------------
// Pointwise evaluation (direct, one basis function at a time).

/// sqrt(1-t^2) sum c_n U_{n-1}(t) for |t| <= 1.
[[nodiscard]] inline double eval_f(const ChebCoeffs& c, double t) {
    double acc = 0.0;
    for (std::size_t n = 1; n <= c.order(); ++n)
        acc += c(n) * cheb::U_weighted(static_cast<int>(n) - 1, t);
    return acc;
}

/// sum c_n Tx_n(s) for any real s.
[[nodiscard]] inline double eval_F(const ChebCoeffs& c, double s) {
    double acc = 0.0;
    for (std::size_t n = 1; n <= c.order(); ++n) acc += c(n) * cheb::T_extended(static_cast<int>(n), s);
    return acc;
}

// ---------------------------------------------------------------------------
// Recurrence resampling for display grids.

/// f at each point by U_{n+1} = 2t U_n - U_{n-1}, then the sqrt(1-t^2) weight.
[[nodiscard]] inline std::vector<double> resample_f(const ChebCoeffs& c, std::span<const double> pts) {
    std::vector<double> out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double t = pts[k];
        if (std::abs(t) > 1.0) throw std::domain_error("resample_f: abscissa outside [-1,1]");
        double u_prev = 0.0, u_cur = 1.0, acc = 0.0;  // U_{-1}, U_0
        for (std::size_t n = 1; n <= c.order(); ++n) {
            acc += c(n) * u_cur;  // c_n U_{n-1}
            const double u_next = 2.0 * t * u_cur - u_prev;
            u_prev = u_cur;
            u_cur = u_next;
        }
        out[k] = std::sqrt((1.0 - t) * (1.0 + t)) * acc;
    }
    return out;
}

/// F at each point; T_{n+1} = 2s T_n - T_{n-1} on [-1,1], extended basis outside.
[[nodiscard]] inline std::vector<double> resample_F(const ChebCoeffs& c, std::span<const double> pts) {
    std::vector<double> out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double s = pts[k];
        if (std::abs(s) > 1.0) {
            out[k] = eval_F(c, s);
            continue;
        }
        double t_prev = 1.0, t_cur = s, acc = 0.0;  // T_0, T_1
        for (std::size_t n = 1; n <= c.order(); ++n) {
            acc += c(n) * t_cur;
            const double t_next = 2.0 * s * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = t_next;
        }
        out[k] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Synthesis and analysis.

[[nodiscard]] inline SampledFunction synth_f(const ChebCoeffs& c, const Grid& grid,
                                             TransformPath path = TransformPath::Auto) {
    switch (grid.kind()) {
        case GridKind::CglNode: {
            const ChebTransform tr(grid.size(), path);
            auto v = tr.sine_synth(c.values());
            return {grid, std::move(v), SampleRole::Function};
        }
        case GridKind::Uniform:
            return {grid, resample_f(c, grid.points()), SampleRole::Function};
        case GridKind::CglMid:
            break;
    }
    throw std::invalid_argument("synth_f: f is sampled on CGL_NODE or UNIFORM grids, not CGL_MID");
}

[[nodiscard]] inline SampledFunction synth_F(const ChebCoeffs& c, const Grid& grid,
                                             TransformPath path = TransformPath::Auto) {
    if (grid.kind() == GridKind::CglMid) {
        const ChebTransform tr(grid.size(), path);
        return {grid, tr.cosine_synth(c.values()), SampleRole::Transform};
    }
    return {grid, resample_F(c, grid.points()), SampleRole::Transform};
}

/// F at arbitrary abscissae, including points outside [-1,1].
[[nodiscard]] inline std::vector<double> synth_F(const ChebCoeffs& c, std::span<const double> pts) {
    return resample_F(c, pts);
}

namespace detail {
inline void require_complete(const SampledFunction& x, GridKind kind, const char* who) {
    if (x.grid.kind() != kind)
        throw std::invalid_argument(std::string(who) + ": expected samples on " + to_string(kind) +
                                    ", got " + to_string(x.grid.kind()));
    for (std::size_t m = 0; m < x.values.size(); ++m)
        if (!std::isfinite(x.values[m]))
            throw std::invalid_argument(std::string(who) + ": sample " + std::to_string(m) +
                                        " is missing; analysis requires a complete grid");
}
}  // namespace detail

/// Coefficients c_1..c_N from F on CGL_MID (c_N = 0). The constant component
/// of the samples, if any, is discarded and optionally returned.
[[nodiscard]] inline ChebCoeffs analyze_from_F(const SampledFunction& F,
                                               TransformPath path = TransformPath::Auto,
                                               double* constant = nullptr) {
    detail::require_complete(F, GridKind::CglMid, "analyze_from_F");
    const ChebTransform tr(F.grid.size(), path);
    return ChebCoeffs(tr.cosine_analyze(F.values, constant));
}

/// Coefficients c_1..c_N from f on CGL_NODE (c_N = 0; the t = 1 sample is unused).
[[nodiscard]] inline ChebCoeffs analyze_from_f(const SampledFunction& f,
                                               TransformPath path = TransformPath::Auto) {
    detail::require_complete(f, GridKind::CglNode, "analyze_from_f");
    const ChebTransform tr(f.grid.size(), path);
    return ChebCoeffs(tr.sine_analyze(f.values));
}

// ---------------------------------------------------------------------------
// Norms. Quadrature is the midpoint rule in theta = arccos(t), which absorbs
// the 1/sqrt(1-t^2) weight exactly.

inline constexpr std::size_t kDefaultQuadraturePoints = 2048;

struct Norms {
    double l2 = 0.0;           // unweighted L^2 over the natural domain
    double l2_weighted = 0.0;  // L^2 with weight 1/sqrt(1-t^2) over (-1,1)
};

/// Norms of a function g on (-1,1): l2 = (int g^2 dt)^(1/2),
/// l2_weighted = (int g^2 / sqrt(1-t^2) dt)^(1/2).
template <class Fn>
[[nodiscard]] Norms interval_norms(Fn&& g, std::size_t points = kDefaultQuadraturePoints) {
    const double h = std::numbers::pi / static_cast<double>(points);
    double plain = 0.0, weighted = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double theta = (static_cast<double>(j) + 0.5) * h;
        const double v = g(std::cos(theta));
        weighted += v * v;
        plain += v * v * std::sin(theta);
    }
    return {std::sqrt(plain * h), std::sqrt(weighted * h)};
}

/// Norms of the f-side function represented by c.
[[nodiscard]] inline Norms norms(const ChebCoeffs& c, std::size_t points = kDefaultQuadraturePoints) {
    const double h = std::numbers::pi / static_cast<double>(points);
    std::vector<double> thetas(points);
    for (std::size_t j = 0; j < points; ++j) thetas[j] = (static_cast<double>(j) + 0.5) * h;
    double plain = 0.0, weighted = 0.0;
    for (double theta : thetas) {
        double v = 0.0;
        for (std::size_t n = 1; n <= c.order(); ++n) v += c(n) * std::sin(static_cast<double>(n) * theta);
        weighted += v * v;
        plain += v * v * std::sin(theta);
    }
    return {std::sqrt(plain * h), std::sqrt(weighted * h)};
}

/// Norms of the F-side function represented by c: l2 over the whole real line
/// (exterior parts by the substitution s = (u + 1/u)/2), l2_weighted over (-1,1).
[[nodiscard]] inline Norms transform_norms(const ChebCoeffs& c,
                                           std::size_t points = kDefaultQuadraturePoints) {
    const double h = std::numbers::pi / static_cast<double>(points);
    double inner = 0.0, weighted = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double theta = (static_cast<double>(j) + 0.5) * h;
        double v = 0.0;
        for (std::size_t n = 1; n <= c.order(); ++n) v += c(n) * std::cos(static_cast<double>(n) * theta);
        weighted += v * v;
        inner += v * v * std::sin(theta);
    }
    // int_{|s|>1} F^2 ds = int_0^1 [P(u)^2 + P(-u)^2] (1 - u^2) / (2 u^2) du, P(u) = sum c_n u^n.
    const double hu = 1.0 / static_cast<double>(points);
    double outer = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double u = (static_cast<double>(j) + 0.5) * hu;
        double pos = 0.0, neg = 0.0, un = 1.0;
        for (std::size_t n = 1; n <= c.order(); ++n) {
            un *= u;
            pos += c(n) * un;
            neg += (n % 2 == 0 ? 1.0 : -1.0) * c(n) * un;
        }
        outer += (pos * pos + neg * neg) * (1.0 - u * u) / (2.0 * u * u);
    }
    return {std::sqrt(inner * h + outer * hu), std::sqrt(weighted * h)};
}

/// Norms of grid samples by the matching quadrature: trapezoid in theta on
/// CGL_NODE (the missing t = -1 endpoint is taken as 0), midpoint in theta on
/// CGL_MID, midpoint in t on UNIFORM.
[[nodiscard]] inline Norms norms(const SampledFunction& x) {
    const std::size_t n = x.grid.size();
    const double dn = static_cast<double>(n);
    double plain = 0.0, weighted = 0.0;
    switch (x.grid.kind()) {
        case GridKind::CglNode:
        case GridKind::CglMid: {
            const double h = std::numbers::pi / dn;
            for (std::size_t m = 0; m < n; ++m) {
                const double w = (x.grid.kind() == GridKind::CglNode && m == 0) ? 0.5 : 1.0;
                const double v2 = x.values[m] * x.values[m];
                weighted += w * v2;
                plain += w * v2 * std::sin(x.grid.angle(m));
            }
            plain *= h;
            weighted *= h;
            break;
        }
        case GridKind::Uniform: {
            const double h = 2.0 / dn;
            for (std::size_t m = 0; m < n; ++m) {
                const double t = x.grid[m];
                const double v2 = x.values[m] * x.values[m];
                plain += v2;
                weighted += v2 / std::sqrt((1.0 - t) * (1.0 + t));
            }
            plain *= h;
            weighted *= h;
            break;
        }
    }
    return {std::sqrt(plain), std::sqrt(weighted)};
}

}  // namespace tht
