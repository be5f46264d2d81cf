#pragma once

/// \file
/// Weighted least-squares estimate of the coefficients c_1..c_N from partial
/// data on both sides. The cost is
///
///   sum_k w_k |f(t_k) - sum c_n sqrt(1 - t_k^2) U_{n-1}(t_k)|^2     t_k in (-1, 1)
/// + sum_i w_i |F(s_i) - sum c_n T_n(s_i)|^2                          s_i in (-1, 1)
/// + sum_j w_j |F(s_j) - sum c_n (s_j - sign(s_j) sqrt(s_j^2 - 1))^n|^2   |s_j| > 1
///
/// with arc-length weights |acos(x + D/2) - acos(x - D/2)| inside [-1, 1]
/// and plain D outside. D is the local sample spacing.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tht/chebyshev.hpp"
#include "tht/error.hpp"
#include "tht/lagrange.hpp"
#include "tht/mask.hpp"
#include "tht/report.hpp"
#include "tht/series.hpp"

namespace tht {

/// Scattered data for the cost. F samples with |s| >= 1 enter the exterior
/// term; the rest the interior one. |s| == 1 exactly is rejected.
struct CostData {
    std::vector<double> t, f;
    std::vector<double> s, F;
};

struct LeastSquaresResult {
    ChebCoeffs coeffs;
    SolverReport report;
};

namespace detail {

/// Half the distance between neighbors in sorted order; one-sided at the
/// ends, 1 for a lone sample.
inline std::vector<double> local_spacing(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 1.0);
    if (n < 2) return d;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = x[order[k == 0 ? 0 : k - 1]], hi = x[order[k + 1 == n ? n - 1 : k + 1]];
        d[order[k]] = (k == 0 || k + 1 == n) ? hi - lo : 0.5 * (hi - lo);
    }
    return d;
}

inline double arc_weight(double x, double delta) {
    auto clamp = [](double v) { return std::clamp(v, -1.0, 1.0); };
    return std::abs(std::acos(clamp(x + 0.5 * delta)) - std::acos(clamp(x - 0.5 * delta)));
}

}  // namespace detail

/// Cost weights for one group of samples: arc length inside [-1, 1], the
/// spacing itself outside.
[[nodiscard]] inline std::vector<double> cost_weights(std::span<const double> x) {
    auto w = detail::local_spacing(x);
    for (std::size_t k = 0; k < x.size(); ++k)
        if (std::abs(x[k]) < 1.0) w[k] = detail::arc_weight(x[k], w[k]);
    return w;
}

/// Minimizes the cost over c_1..c_N, optionally with ridge * |c|^2 added.
/// Solved by column-pivoted Householder QR of the row-scaled design; the
/// condition estimate is the 2-norm condition number of that design.
[[nodiscard]] inline LeastSquaresResult minimize_cost(const CostData& data, std::size_t order, double ridge = 0.0) {
    if (order == 0) throw std::invalid_argument("minimize_cost: order must be >= 1");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw std::invalid_argument("minimize_cost: ridge must be >= 0");
    if (data.t.size() != data.f.size() || data.s.size() != data.F.size())
        throw std::invalid_argument("minimize_cost: abscissa and value counts differ");
    for (double t : data.t)
        if (!(std::abs(t) < 1.0)) throw std::invalid_argument("minimize_cost: f abscissa outside (-1, 1)");
    for (double s : data.s)
        if (std::abs(s) == 1.0 || !std::isfinite(s))
            throw std::invalid_argument("minimize_cost: F abscissa at +-1 or non-finite");

    std::vector<double> inner_s, inner_F, outer_s, outer_F;
    for (std::size_t i = 0; i < data.s.size(); ++i) {
        auto& xs = std::abs(data.s[i]) < 1.0 ? inner_s : outer_s;
        auto& ys = std::abs(data.s[i]) < 1.0 ? inner_F : outer_F;
        xs.push_back(data.s[i]);
        ys.push_back(data.F[i]);
    }
    const auto wt = cost_weights(data.t), wi = cost_weights(inner_s), wo = cost_weights(outer_s);

    const std::size_t rows = data.t.size() + data.s.size();
    const std::size_t ridge_rows = ridge > 0.0 ? order : 0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows + ridge_rows),
                                              static_cast<Eigen::Index>(order));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < data.t.size(); ++k, ++r) {
        const double sw = std::sqrt(wt[k]);
        const double theta = std::acos(data.t[k]);
        for (std::size_t n = 1; n <= order; ++n)
            A(r, static_cast<Eigen::Index>(n - 1)) = sw * std::sin(static_cast<double>(n) * theta);
        b(r) = sw * data.f[k];
    }
    for (std::size_t i = 0; i < inner_s.size(); ++i, ++r) {
        const double sw = std::sqrt(wi[i]);
        for (std::size_t n = 1; n <= order; ++n)
            A(r, static_cast<Eigen::Index>(n - 1)) = sw * cheb::T(static_cast<int>(n), inner_s[i]);
        b(r) = sw * inner_F[i];
    }
    for (std::size_t j = 0; j < outer_s.size(); ++j, ++r) {
        const double sw = std::sqrt(wo[j]);
        for (std::size_t n = 1; n <= order; ++n)
            A(r, static_cast<Eigen::Index>(n - 1)) = sw * cheb::T_extended(static_cast<int>(n), outer_s[j]);
        b(r) = sw * outer_F[j];
    }
    for (std::size_t n = 0; n < ridge_rows; ++n, ++r)
        A(r, static_cast<Eigen::Index>(n)) = std::sqrt(ridge);

    if (rows == 0 && ridge_rows == 0) {
        std::vector<std::size_t> all(order);
        std::iota(all.begin(), all.end(), 1);
        throw degenerate_problem("minimize_cost: no data", all);
    }
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double tol = smax * 1e-13 * static_cast<double>(std::max<Eigen::Index>(A.rows(), A.cols()));
    if (A.rows() < A.cols() || smax == 0.0 || sv(sv.size() - 1) <= tol) {
        std::vector<std::size_t> modes;
        for (Eigen::Index k = 0; k < A.cols(); ++k) {
            if (k < sv.size() && sv(k) > tol) continue;
            Eigen::Index arg = 0;
            svd.matrixV().col(k).cwiseAbs().maxCoeff(&arg);
            modes.push_back(static_cast<std::size_t>(arg) + 1);
        }
        std::sort(modes.begin(), modes.end());
        modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
        std::string list;
        for (std::size_t m : modes) list += (list.empty() ? "" : ", ") + std::to_string(m);
        throw degenerate_problem("minimize_cost: rank-deficient system (" + std::to_string(rows) + " samples, " +
                                     std::to_string(order) + " unknowns); unresolved modes: " + list +
                                     "; add data or set ridge > 0",
                                 modes);
    }

    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    const Eigen::VectorXd resid = (A * c - b).head(static_cast<Eigen::Index>(rows));

    LeastSquaresResult out{ChebCoeffs(std::vector<double>(c.data(), c.data() + c.size())), {}};
    out.report.iterations = 1;
    out.report.termination = Termination::Tolerance;
    out.report.cost = resid.squaredNorm();
    out.report.condition_estimate = sv(0) / sv(sv.size() - 1);
    out.report.data_residual.push_back(std::sqrt(resid.squaredNorm()));
    return out;
}

/// Gathers the masked samples (f on CGL nodes, F on CGL midpoints) plus any
/// extra exterior F samples, then minimizes. The f sample at t = 1 carries
/// no information and is skipped.
[[nodiscard]] inline LeastSquaresResult minimize_cost(const SampledFunction& f, const SampledFunction& F,
                                                      const KnownMask& mask, std::size_t order, double ridge = 0.0,
                                                      const CostData& exterior = {}) {
    if (f.grid.kind() != GridKind::CglNode || F.grid.kind() != GridKind::CglMid || f.grid.size() != F.grid.size())
        throw std::invalid_argument("minimize_cost: expected f on CGL_NODE and F on CGL_MID of equal size");
    const std::size_t n = f.grid.size();
    if (mask.condition == ConditionTag::C1) mask.validate(n);
    else {
        KnownMask loose = mask;
        loose.condition = ConditionTag::C2;
        if (!(mask.f_range.empty() && mask.F_range.empty())) loose.validate(n);
    }
    CostData d = exterior;
    for (std::size_t m = mask.f_range.begin; m < mask.f_range.end; ++m) {
        if (m == 0) continue;
        d.t.push_back(f.grid[m]);
        d.f.push_back(f.values[m]);
    }
    for (std::size_t m = mask.F_range.begin; m < mask.F_range.end; ++m) {
        d.s.push_back(F.grid[m]);
        d.F.push_back(F.values[m]);
    }
    return minimize_cost(d, order, ridge);
}

}  // namespace tht
