#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tht {

enum class Termination { MaxIters, Stalled, Tolerance };

[[nodiscard]] inline std::string to_string(Termination t) {
    switch (t) {
        case Termination::MaxIters: return "MAX_ITERS";
        case Termination::Stalled: return "STALLED";
        case Termination::Tolerance: return "TOLERANCE";
    }
    return "?";
}

[[nodiscard]] inline Termination termination_from_string(const std::string& s) {
    if (s == "MAX_ITERS") return Termination::MaxIters;
    if (s == "STALLED") return Termination::Stalled;
    if (s == "TOLERANCE") return Termination::Tolerance;
    throw std::invalid_argument("unknown termination '" + s + "'");
}

/// Diagnostics of one solver invocation. Traces are indexed by iteration,
/// entry 0 being the initial estimate; ground_truth_error is empty when no
/// truth was supplied.
struct SolverReport {
    std::size_t iterations = 0;
    std::vector<double> ground_truth_error;
    std::vector<double> data_residual;
    Termination termination = Termination::Tolerance;
    std::optional<double> condition_estimate;
    std::optional<double> cost;           // minimized cost value (least squares)
    std::optional<double> constant_term;  // |b_0| left by interpolation
};

}  // namespace tht
