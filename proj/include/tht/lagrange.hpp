#pragma once

/// \file
/// Explicit recovery of a finite series from N + 1 samples of F by
/// polynomial interpolation. Exact in exact arithmetic, badly conditioned
/// in practice: use for low orders or as an initial estimate.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tht/chebyshev.hpp"
#include "tht/error.hpp"
#include "tht/report.hpp"
#include "tht/series.hpp"

namespace tht {

inline constexpr std::size_t kDefaultLagrangeCap = 16;

struct LagrangeOptions {
    std::size_t cap = kDefaultLagrangeCap;
    bool allow_above_cap = false;
};

struct LagrangeResult {
    ChebCoeffs coeffs;
    SolverReport report;
};

/// `count` Chebyshev points of the first kind mapped into the open interval
/// (c, d), listed in decreasing order.
[[nodiscard]] inline std::vector<double> chebyshev_points(std::size_t count, double c, double d) {
    if (count == 0) throw std::invalid_argument("chebyshev_points: count must be >= 1");
    if (!(c < d)) throw std::invalid_argument("chebyshev_points: need c < d");
    std::vector<double> x(count);
    const double mid = 0.5 * (c + d), half = 0.5 * (d - c);
    for (std::size_t k = 0; k < count; ++k)
        x[k] = mid + half * std::cos((static_cast<double>(k) + 0.5) * std::numbers::pi / static_cast<double>(count));
    return x;
}

/// Points in (c, d), |s| > 1 on one side, whose contracted images
/// u = |s| - sqrt(s^2 - 1) are Chebyshev-distributed.
[[nodiscard]] inline std::vector<double> exterior_chebyshev_points(std::size_t count, double c, double d) {
    if (!(c < d)) throw std::invalid_argument("exterior_chebyshev_points: need c < d");
    const double sgn = c >= 1.0 ? 1.0 : (d <= -1.0 ? -1.0 : 0.0);
    if (sgn == 0.0) throw std::invalid_argument("exterior_chebyshev_points: (c, d) must lie outside [-1, 1]");
    const double u1 = cheb::v_to_u(std::abs(c)), u2 = cheb::v_to_u(std::abs(d));
    auto u = chebyshev_points(count, std::min(u1, u2), std::max(u1, u2));
    for (double& x : u) x = sgn * cheb::u_to_v(x);
    return u;
}

namespace detail {

inline void check_lagrange_input(std::span<const double> x, std::span<const double> y, std::size_t order,
                                 const LagrangeOptions& opt, const char* who) {
    if (order == 0) throw std::invalid_argument(std::string(who) + ": order must be >= 1");
    if (x.size() != order + 1 || y.size() != order + 1)
        throw std::invalid_argument(std::string(who) + ": need exactly N + 1 = " + std::to_string(order + 1) +
                                    " samples, got " + std::to_string(x.size()));
    if (order > opt.cap && !opt.allow_above_cap)
        throw degenerate_problem(std::string(who) + ": order " + std::to_string(order) + " exceeds the cap " +
                                 std::to_string(opt.cap) +
                                 "; polynomial interpolation is too ill-conditioned (set allow_above_cap to force)");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite sample value");
}

inline void check_distinct(std::span<const double> x, const char* who) {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument(std::string(who) + ": duplicate abscissae");
}

/// Monomial coefficients a_0..a_n of the interpolating polynomial, obtained
/// by expanding the Lagrange form: each basis numerator prod_{m != j}(x - x_m)
/// is the node polynomial deflated by (x - x_j).
inline std::vector<double> lagrange_monomials(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    std::vector<double> node(n + 1, 0.0);  // prod (x - x_m), ascending powers
    node[0] = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = m + 1; k > 0; --k) node[k] = node[k - 1] - x[m] * node[k];
        node[0] *= -x[m];
    }
    std::vector<double> a(n, 0.0), q(n);
    for (std::size_t j = 0; j < n; ++j) {
        // synthetic division node / (x - x_j) from the top
        q[n - 1] = node[n];
        for (std::size_t k = n - 1; k > 0; --k) q[k - 1] = node[k] + x[j] * q[k];
        double denom = 1.0;
        for (std::size_t m = 0; m < n; ++m)
            if (m != j) denom *= x[j] - x[m];
        const double scale = y[j] / denom;
        for (std::size_t k = 0; k < n; ++k) a[k] += scale * q[k];
    }
    return a;
}

inline double condition_number(const Eigen::MatrixXd& A) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    return smin > 0.0 ? sv(0) / smin : INFINITY;
}

}  // namespace detail

/// Interior data: F is a polynomial of degree N on (c, d) within (-1, 1).
/// The condition estimate is the 2-norm condition number of the Chebyshev
/// Vandermonde matrix [T_n(s_j)], n = 0..N, which maps coefficients to data.
[[nodiscard]] inline LagrangeResult lagrange_invert_C1(std::span<const double> s, std::span<const double> F,
                                                       std::size_t order, const LagrangeOptions& opt = {}) {
    detail::check_lagrange_input(s, F, order, opt, "lagrange_invert_C1");
    for (double x : s)
        if (!(std::abs(x) < 1.0))
            throw std::invalid_argument("lagrange_invert_C1: abscissa " + std::to_string(x) +
                                        " not inside (-1, 1)");
    detail::check_distinct(s, "lagrange_invert_C1");

    const auto a = detail::lagrange_monomials(s, F);
    const auto b = cheb::monomial_to_chebT(a);

    Eigen::MatrixXd V(order + 1, order + 1);
    for (std::size_t j = 0; j <= order; ++j)
        for (std::size_t n = 0; n <= order; ++n) V(j, n) = cheb::T(static_cast<int>(n), s[j]);

    LagrangeResult r{ChebCoeffs(std::vector<double>(b.begin() + 1, b.end())), {}};
    r.report.iterations = 1;
    r.report.termination = Termination::Tolerance;
    r.report.constant_term = std::abs(b[0]);
    r.report.condition_estimate = detail::condition_number(V);
    return r;
}

/// Exterior data: with u = |s| - sqrt(s^2 - 1), F(s) = sum c_n (sign(s) u)^n
/// is a polynomial in u without constant term. All abscissae must lie on the
/// same side, strictly outside [-1, 1]. The condition estimate is that of the
/// monomial Vandermonde matrix [u_j^n], n = 0..N.
[[nodiscard]] inline LagrangeResult lagrange_invert_C2(std::span<const double> s, std::span<const double> F,
                                                       std::size_t order, const LagrangeOptions& opt = {}) {
    detail::check_lagrange_input(s, F, order, opt, "lagrange_invert_C2");
    const bool right = s[0] > 1.0;
    for (double x : s) {
        if (!(std::abs(x) > 1.0))
            throw std::invalid_argument("lagrange_invert_C2: abscissa " + std::to_string(x) +
                                        " not strictly outside [-1, 1]");
        if ((x > 1.0) != right)
            throw std::invalid_argument("lagrange_invert_C2: abscissae must all lie on one side of [-1, 1]");
    }
    std::vector<double> u(s.size());
    std::transform(s.begin(), s.end(), u.begin(), [](double x) { return cheb::v_to_u(std::abs(x)); });
    detail::check_distinct(u, "lagrange_invert_C2");

    const auto a = detail::lagrange_monomials(u, F);
    std::vector<double> c(a.begin() + 1, a.end());
    if (!right)
        for (std::size_t i = 0; i < c.size(); i += 2) c[i] = -c[i];  // c_n = (-1)^n alpha_n, c[i] = c_{i+1}

    Eigen::MatrixXd V(order + 1, order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        double p = 1.0;
        for (std::size_t n = 0; n <= order; ++n, p *= u[j]) V(j, n) = p;
    }

    LagrangeResult r{ChebCoeffs(std::move(c)), {}};
    r.report.iterations = 1;
    r.report.termination = Termination::Tolerance;
    r.report.constant_term = std::abs(a[0]);
    r.report.condition_estimate = detail::condition_number(V);
    return r;
}

}  // namespace tht
