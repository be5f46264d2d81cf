#pragma once

/// \file
/// Discrete sine/cosine transforms on the Chebyshev-Gauss-Lobatto grids.
///
/// With theta_m = m pi / N (nodes) and phi_m = (m + 1/2) pi / N (midpoints),
/// a finite series with coefficients c_1..c_K satisfies exactly
///
///   f(t_m) = sum_n c_n sin(n theta_m),   F(s_m) = sum_n c_n cos(n phi_m).
///
/// Mode n = N vanishes on both grids, so only c_1..c_{N-1} are resolved;
/// analysis returns c_N = 0. The node at m = 0 (t = 1) carries no
/// information. The cosine analysis also sees a constant (T_0) component,
/// which is not part of the coefficient space and is reported separately.

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#ifdef THT_HAVE_FFTW
#include <fftw3.h>
#endif

namespace tht {

enum class TransformPath { Auto, Naive, Fast };

/// True when the library was built with the FFTW fast path.
[[nodiscard]] constexpr bool fast_transforms_available() noexcept {
#ifdef THT_HAVE_FFTW
    return true;
#else
    return false;
#endif
}

namespace detail {

#ifdef THT_HAVE_FFTW
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Plans are created once per grid size and only executed through the
// new-array interface afterwards, which FFTW allows from any thread.
class FftwPlans {
public:
    explicit FftwPlans(std::size_t n) : n_(n) {
        std::vector<double> in(n + 1), out(n + 1);
        const int ni = static_cast<int>(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        std::lock_guard lock(fftw_planner_mutex());
        if (n >= 2) dst1_ = fftw_plan_r2r_1d(ni - 1, in.data(), out.data(), FFTW_RODFT00, flags);
        dct2_ = fftw_plan_r2r_1d(ni, in.data(), out.data(), FFTW_REDFT10, flags);
        dct3_ = fftw_plan_r2r_1d(ni, in.data(), out.data(), FFTW_REDFT01, flags);
    }
    FftwPlans(const FftwPlans&) = delete;
    FftwPlans& operator=(const FftwPlans&) = delete;
    ~FftwPlans() {
        std::lock_guard lock(fftw_planner_mutex());
        if (dst1_) fftw_destroy_plan(dst1_);
        fftw_destroy_plan(dct2_);
        fftw_destroy_plan(dct3_);
    }

    // Y_k = 2 sum_j X_j sin(pi (j+1)(k+1) / N), length N-1.
    void dst1(double* in, double* out) const { fftw_execute_r2r(dst1_, in, out); }
    // Y_k = 2 sum_j X_j cos(pi (j+1/2) k / N), length N.
    void dct2(double* in, double* out) const { fftw_execute_r2r(dct2_, in, out); }
    // Y_k = X_0 + 2 sum_{j>=1} X_j cos(pi j (k+1/2) / N), length N.
    void dct3(double* in, double* out) const { fftw_execute_r2r(dct3_, in, out); }

private:
    std::size_t n_;
    fftw_plan dst1_ = nullptr;
    fftw_plan dct2_ = nullptr;
    fftw_plan dct3_ = nullptr;
};
#endif

}  // namespace detail

/// Sine and cosine transforms for one CGL grid size N. Immutable after
/// construction and cheap to copy; safe to share between threads.
class ChebTransform {
public:
    explicit ChebTransform(std::size_t n, TransformPath path = TransformPath::Auto) : n_(n) {
        if (n == 0) throw std::invalid_argument("ChebTransform: grid size must be >= 1");
        const double pi = std::numbers::pi;
        sin_table_.resize(2 * n);
        for (std::size_t k = 0; k < 2 * n; ++k)
            sin_table_[k] = std::sin(static_cast<double>(k) * pi / static_cast<double>(n));
        cos_table_.resize(4 * n);
        for (std::size_t k = 0; k < 4 * n; ++k)
            cos_table_[k] = std::cos(static_cast<double>(k) * pi / (2.0 * static_cast<double>(n)));
        // Exact zeros where they belong; the tables are indexed modulo the period.
        sin_table_[0] = 0.0;
        sin_table_[n] = 0.0;
        cos_table_[n] = 0.0;
        cos_table_[3 * n] = 0.0;
#ifdef THT_HAVE_FFTW
        if (path != TransformPath::Naive) plans_ = std::make_shared<const detail::FftwPlans>(n);
#else
        if (path == TransformPath::Fast)
            throw std::invalid_argument("ChebTransform: fast path requested but FFTW is not available");
#endif
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] bool uses_fast_path() const noexcept {
#ifdef THT_HAVE_FFTW
        return plans_ != nullptr;
#else
        return false;
#endif
    }

    /// f_m = sum_{n=1}^{K} c[n-1] sin(m n pi / N), m = 0..N-1.
    [[nodiscard]] std::vector<double> sine_synth(std::span<const double> c) const {
        std::vector<double> f(n_, 0.0);
#ifdef THT_HAVE_FFTW
        if (plans_ && c.size() <= n_) {
            if (n_ < 2) return f;
            std::vector<double> in(c.begin(), c.begin() + std::min(c.size(), n_ - 1));
            in.resize(n_ - 1, 0.0);
            std::vector<double> out(n_ - 1);
            plans_->dst1(in.data(), out.data());
            for (std::size_t m = 1; m < n_; ++m) f[m] = 0.5 * out[m - 1];
            return f;
        }
#endif
        const std::size_t period = 2 * n_;
        for (std::size_t m = 1; m < n_; ++m) {
            double acc = 0.0;
            std::size_t idx = 0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                idx += m;
                if (idx >= period) idx -= period;
                acc += c[j] * sin_table_[idx];
            }
            f[m] = acc;
        }
        return f;
    }

    /// Inverse of sine_synth on c_1..c_{N-1}; returns N values with c_N = 0.
    /// The m = 0 sample is ignored.
    [[nodiscard]] std::vector<double> sine_analyze(std::span<const double> f) const {
        check_length(f);
        std::vector<double> c(n_, 0.0);
        if (n_ < 2) return c;
        const double scale = 2.0 / static_cast<double>(n_);
#ifdef THT_HAVE_FFTW
        if (plans_) {
            std::vector<double> in(f.begin() + 1, f.end()), out(n_ - 1);
            plans_->dst1(in.data(), out.data());
            for (std::size_t k = 0; k + 1 < n_; ++k) c[k] = 0.5 * scale * out[k];
            return c;
        }
#endif
        const std::size_t period = 2 * n_;
        for (std::size_t n = 1; n < n_; ++n) {
            double acc = 0.0;
            std::size_t idx = 0;
            for (std::size_t m = 1; m < n_; ++m) {
                idx += n;
                if (idx >= period) idx -= period;
                acc += f[m] * sin_table_[idx];
            }
            c[n - 1] = scale * acc;
        }
        return c;
    }

    /// F_m = sum_{n=1}^{K} c[n-1] cos(n (m + 1/2) pi / N), m = 0..N-1.
    [[nodiscard]] std::vector<double> cosine_synth(std::span<const double> c) const {
        std::vector<double> F(n_, 0.0);
#ifdef THT_HAVE_FFTW
        if (plans_ && c.size() <= n_) {
            std::vector<double> in(n_, 0.0), out(n_);
            for (std::size_t j = 0; j < c.size() && j + 1 < n_; ++j) in[j + 1] = 0.5 * c[j];
            plans_->dct3(in.data(), out.data());
            return out;
        }
#endif
        const std::size_t period = 4 * n_;
        for (std::size_t m = 0; m < n_; ++m) {
            const std::size_t step = 2 * m + 1;
            double acc = 0.0;
            std::size_t idx = 0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                idx = (idx + step) % period;
                acc += c[j] * cos_table_[idx];
            }
            F[m] = acc;
        }
        return F;
    }

    /// Inverse of cosine_synth on c_1..c_{N-1}; returns N values with c_N = 0.
    /// If `constant` is non-null it receives the discarded T_0 component.
    [[nodiscard]] std::vector<double> cosine_analyze(std::span<const double> F,
                                                     double* constant = nullptr) const {
        check_length(F);
        std::vector<double> c(n_, 0.0);
        const double inv_n = 1.0 / static_cast<double>(n_);
#ifdef THT_HAVE_FFTW
        if (plans_) {
            std::vector<double> in(F.begin(), F.end()), out(n_);
            plans_->dct2(in.data(), out.data());
            for (std::size_t k = 1; k < n_; ++k) c[k - 1] = out[k] * inv_n;
            if (constant) *constant = 0.5 * out[0] * inv_n;
            return c;
        }
#endif
        const std::size_t period = 4 * n_;
        for (std::size_t n = 1; n < n_; ++n) {
            double acc = 0.0;
            for (std::size_t m = 0; m < n_; ++m) acc += F[m] * cos_table_[(n * (2 * m + 1)) % period];
            c[n - 1] = 2.0 * inv_n * acc;
        }
        if (constant) {
            double acc = 0.0;
            for (double v : F) acc += v;
            *constant = acc * inv_n;
        }
        return c;
    }

private:
    void check_length(std::span<const double> v) const {
        if (v.size() != n_)
            throw std::invalid_argument("ChebTransform: expected " + std::to_string(n_) +
                                        " samples, got " + std::to_string(v.size()));
    }

    std::size_t n_;
    std::vector<double> sin_table_;  // sin(k pi / N), k < 2N
    std::vector<double> cos_table_;  // cos(k pi / 2N), k < 4N
#ifdef THT_HAVE_FFTW
    std::shared_ptr<const detail::FftwPlans> plans_;
#endif
};

}  // namespace tht
