#pragma once

/// \file
/// Alternating extrapolation for interior truncation (condition C1):
///
///   F0 = known F on [m1, m2), guess elsewhere
///   f0 = known f on [m3, m4), M2 F0 elsewhere
///   F_{k+1} = known F on [m1, m2), M1 f_k elsewhere
///   f_{k+1} = known f on [m3, m4), M2 F_{k+1} elsewhere
///
/// M1 and M2 are non-expansive, so with consistent data the distance of f_k
/// to the truth never grows.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tht/hilbert.hpp"
#include "tht/mask.hpp"
#include "tht/report.hpp"
#include "tht/series.hpp"

namespace tht {

enum class InitialGuess { Zero, LinearTaper };

[[nodiscard]] inline std::string to_string(InitialGuess g) {
    return g == InitialGuess::Zero ? "ZERO" : "LINEAR_TAPER";
}

[[nodiscard]] inline InitialGuess initial_guess_from_string(const std::string& s) {
    if (s == "ZERO") return InitialGuess::Zero;
    if (s == "LINEAR_TAPER") return InitialGuess::LinearTaper;
    throw std::invalid_argument("unknown initial guess '" + s + "' (expected ZERO or LINEAR_TAPER)");
}

struct ExtrapolateOptions {
    std::size_t max_iters = 30;
    InitialGuess guess = InitialGuess::Zero;
    /// Stop with TOLERANCE once no sample changes by more than this.
    double update_tol = 0.0;
    /// Stop with STALLED once the data residual changes by less than this,
    /// relatively, on each of `stall_window` consecutive iterations.
    double stall_tol = 1e-12;
    std::size_t stall_window = 3;
    /// Full-grid f truth on CGL nodes; enables the ground-truth error trace.
    std::optional<std::vector<double>> truth_f;
    TransformPath path = TransformPath::Auto;
};

struct ExtrapolationResult {
    SampledFunction f;
    SampledFunction F;
    SolverReport report;
};

namespace detail {

inline double l2_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) acc += (a[m] - b[m]) * (a[m] - b[m]);
    return std::sqrt(acc);
}

inline void fill_guess(std::vector<double>& F, IndexRange known, InitialGuess guess) {
    const std::size_t n = F.size();
    for (std::size_t m = 0; m < n; ++m) {
        if (known.contains(m)) continue;
        if (guess == InitialGuess::Zero) {
            F[m] = 0.0;
        } else if (m < known.begin) {  // ramp to zero one index past the grid end
            F[m] = F[known.begin] * static_cast<double>(m + 1) / static_cast<double>(known.begin + 1);
        } else {
            F[m] = F[known.end - 1] * static_cast<double>(n - m) / static_cast<double>(n - known.end + 1);
        }
    }
}

}  // namespace detail

/// Runs the alternation. Values of `f_known` and `F_known` outside the mask
/// are ignored. Known samples are copied verbatim into every iterate.
///
/// The data residual of iterate k is the l2 misfit of the model on the known
/// ranges: |(M1 f_k - F) on [m1, m2)| combined with |(M2 F_k - f) on [m3, m4)|.
[[nodiscard]] inline ExtrapolationResult extrapolate(const SampledFunction& f_known, const SampledFunction& F_known,
                                                     const KnownMask& mask, const ExtrapolateOptions& opt = {}) {
    if (f_known.grid.kind() != GridKind::CglNode || F_known.grid.kind() != GridKind::CglMid ||
        f_known.grid.size() != F_known.grid.size())
        throw std::invalid_argument("extrapolate: expected f on CGL_NODE and F on CGL_MID of equal size");
    if (mask.condition != ConditionTag::C1)
        throw std::invalid_argument("extrapolate: only condition C1 is supported (got " + to_string(mask.condition) +
                                    "); use minimize_cost for C2/C3");
    const std::size_t n = f_known.grid.size();
    mask.validate(n);
    if (opt.truth_f && opt.truth_f->size() != n)
        throw std::invalid_argument("extrapolate: truth has " + std::to_string(opt.truth_f->size()) +
                                    " samples, grid has " + std::to_string(n));

    const DiscreteHilbert H(n, opt.path);
    const auto& fk = f_known.values;
    const auto& Fk = F_known.values;

    auto enforce_f = [&](std::vector<double>& f) {
        for (std::size_t m = mask.f_range.begin; m < mask.f_range.end; ++m) f[m] = fk[m];
    };
    auto enforce_F = [&](std::vector<double>& F) {
        for (std::size_t m = mask.F_range.begin; m < mask.F_range.end; ++m) F[m] = Fk[m];
    };

    std::vector<double> F = Fk;
    detail::fill_guess(F, mask.F_range, opt.guess);
    std::vector<double> f = H.inverse(F);
    enforce_f(f);

    SolverReport rep;
    auto record = [&](const std::vector<double>& MF_f, const std::vector<double>& Mf_F) {
        // MF_f = M2 F_k, Mf_F = M1 f_k
        double acc = 0.0;
        for (std::size_t m = mask.F_range.begin; m < mask.F_range.end; ++m)
            acc += (Mf_F[m] - Fk[m]) * (Mf_F[m] - Fk[m]);
        for (std::size_t m = mask.f_range.begin; m < mask.f_range.end; ++m)
            acc += (MF_f[m] - fk[m]) * (MF_f[m] - fk[m]);
        rep.data_residual.push_back(std::sqrt(acc));
        if (opt.truth_f) rep.ground_truth_error.push_back(detail::l2_distance(f, *opt.truth_f));
    };

    std::vector<double> Mf = H.forward(f);
    record(H.inverse(F), Mf);

    rep.termination = Termination::MaxIters;
    std::size_t quiet = 0;
    for (std::size_t k = 0; k < opt.max_iters; ++k) {
        std::vector<double> F_next = Mf;
        enforce_F(F_next);
        std::vector<double> MF = H.inverse(F_next);
        std::vector<double> f_next = MF;
        enforce_f(f_next);

        double change = 0.0;
        for (std::size_t m = 0; m < n; ++m)
            change = std::max({change, std::abs(f_next[m] - f[m]), std::abs(F_next[m] - F[m])});

        f.swap(f_next);
        F.swap(F_next);
        Mf = H.forward(f);
        record(MF, Mf);
        rep.iterations = k + 1;

        if (change <= opt.update_tol) {
            rep.termination = Termination::Tolerance;
            break;
        }
        const double prev = rep.data_residual[rep.data_residual.size() - 2], cur = rep.data_residual.back();
        const double scale = std::max(prev, std::numeric_limits<double>::min());
        quiet = std::abs(cur - prev) / scale < opt.stall_tol ? quiet + 1 : 0;
        if (opt.stall_window > 0 && quiet >= opt.stall_window) {
            rep.termination = Termination::Stalled;
            break;
        }
    }
    return {SampledFunction(f_known.grid, std::move(f), SampleRole::Function),
            SampledFunction(F_known.grid, std::move(F), SampleRole::Transform), std::move(rep)};
}

}  // namespace tht
