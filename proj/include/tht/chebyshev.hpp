#pragma once

/// \file
/// Chebyshev polynomials of the first and second kind, the weighted
/// second-kind basis on [-1,1], the extension of the first-kind basis to
/// the whole real line that arises as the Hilbert image of that weighted
/// basis, and the contraction map v -> u used for exterior data.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tht::cheb {

/// Inside |x| <= kTrigSwitch the trigonometric forms are used; outside,
/// the three-term recurrence.
inline constexpr double kTrigSwitch = 1.0 - 1e-12;

[[nodiscard]] inline double sign(double x) noexcept { return x < 0.0 ? -1.0 : 1.0; }

/// T_n(x) by the recurrence T_{k+1} = 2x T_k - T_{k-1}. Valid on all of R.
[[nodiscard]] inline double T_recurrence(int n, double x) noexcept {
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// U_n(x) by the recurrence U_{k+1} = 2x U_k - U_{k-1}, with U_{-1} = 0.
[[nodiscard]] inline double U_recurrence(int n, double x) noexcept {
    if (n < 0) return 0.0;
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// First-kind Chebyshev polynomial T_n(x) for any finite x.
[[nodiscard]] inline double T(int n, double x) {
    if (n < 0) throw std::invalid_argument("T: degree must be >= 0, got " + std::to_string(n));
    if (std::abs(x) <= kTrigSwitch) return std::cos(n * std::acos(x));
    return T_recurrence(n, x);
}

/// Second-kind Chebyshev polynomial U_n(x); U_{-1} = 0 by convention.
[[nodiscard]] inline double U(int n, double x) {
    if (n < -1) throw std::invalid_argument("U: degree must be >= -1, got " + std::to_string(n));
    if (n == -1) return 0.0;
    const double ax = std::abs(x);
    if (ax < kTrigSwitch) {
        const double theta = std::acos(x);
        return std::sin((n + 1) * theta) / std::sin(theta);
    }
    // Removable singularity of the trig form: U_n(+-1) = (+-1)^n (n+1).
    if (ax == 1.0) return ((n % 2 != 0 && x < 0.0) ? -1.0 : 1.0) * (n + 1);
    return U_recurrence(n, x);
}

/// sqrt(1 - t^2) U_n(t) on [-1,1]; exactly zero at the endpoints.
[[nodiscard]] inline double U_weighted(int n, double t) {
    if (n < -1) throw std::invalid_argument("U_weighted: degree must be >= -1");
    if (!(std::abs(t) <= 1.0))
        throw std::domain_error("U_weighted: argument outside [-1,1]: " + std::to_string(t));
    if (n == -1 || std::abs(t) == 1.0) return 0.0;
    if (std::abs(t) < kTrigSwitch) return std::sin((n + 1) * std::acos(t));
    return std::sqrt((1.0 - t) * (1.0 + t)) * U_recurrence(n, t);
}

/// u = v - sqrt(v^2 - 1) for v >= 1, evaluated without cancellation.
[[nodiscard]] inline double v_to_u(double v) {
    if (!(v >= 1.0) || !std::isfinite(v))
        throw std::domain_error("v_to_u: requires finite v >= 1, got " + std::to_string(v));
    return 1.0 / (v + std::sqrt((v - 1.0) * (v + 1.0)));
}

/// v = (u^2 + 1) / (2u) for 0 < u <= 1.
[[nodiscard]] inline double u_to_v(double u) {
    if (!(u > 0.0 && u <= 1.0))
        throw std::domain_error("u_to_v: requires 0 < u <= 1, got " + std::to_string(u));
    return 0.5 * (u + 1.0 / u);
}

/// Extended first-kind polynomial: T_n(s) on [-1,1], and
/// T_n(s) - U_{n-1}(s) sign(s) sqrt(s^2-1) = (s - sign(s) sqrt(s^2-1))^n outside.
/// The outer branch is evaluated in the contracted power form, so it stays
/// bounded by 1 and decays like (2|s|)^-n.
[[nodiscard]] inline double T_extended(int n, double s) {
    if (n < 0) throw std::invalid_argument("T_extended: degree must be >= 0");
    if (std::abs(s) <= 1.0) return T(n, s);
    const double u = v_to_u(std::abs(s));
    const double mag = std::pow(u, n);
    return (s < 0.0 && n % 2 != 0) ? -mag : mag;
}

/// Monomial coefficients a (sum a_k s^k) to first-kind Chebyshev
/// coefficients b (sum b_k T_k(s)), by Horner's scheme in the Chebyshev
/// basis: x T_0 = T_1, x T_j = (T_{j+1} + T_{j-1}) / 2.
/// Magnitudes of b may grow like 2^-k relative to a; structure is exact.
[[nodiscard]] inline std::vector<double> monomial_to_chebT(std::span<const double> a) {
    if (a.empty()) return {};
    const std::size_t deg = a.size() - 1;
    std::vector<double> b(a.size(), 0.0), next(a.size(), 0.0);
    b[0] = a[deg];
    for (std::size_t k = deg; k-- > 0;) {
        std::fill(next.begin(), next.end(), 0.0);
        const std::size_t top = deg - k;  // current degree of b is top - 1
        for (std::size_t j = 0; j < top; ++j) {
            if (b[j] == 0.0) continue;
            if (j == 0) {
                next[1] += b[0];
            } else {
                next[j + 1] += 0.5 * b[j];
                next[j - 1] += 0.5 * b[j];
            }
        }
        next[0] += a[k];
        b.swap(next);
    }
    return b;
}

}  // namespace tht::cheb
