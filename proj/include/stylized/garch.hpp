#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylized/series.hpp"

namespace stylized {

/// GARCH(1,1): sigma2_t = omega + alpha * eps_{t-1}^2 + beta * sigma2_{t-1}.
struct GarchParams {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    /// Throws DomainError unless omega > 0, alpha >= 0, beta >= 0, alpha + beta < 1.
    void validate() const;
    [[nodiscard]] double persistence() const noexcept { return alpha + beta; }
    [[nodiscard]] double unconditional_variance() const noexcept { return omega / (1.0 - alpha - beta); }
};

struct GarchLikelihood {
    double log_likelihood = 0.0;
    std::vector<double> cond_variance;
};

/// Gaussian log-likelihood -1/2 sum [ln 2pi + ln sigma2_t + eps_t^2 / sigma2_t] of demeaned
/// values. The recursion starts from `initial_variance`, or the mean of eps^2 when omitted.
/// Throws DomainError on invalid parameters (never clamps) and InsufficientDataError for n < 2.
[[nodiscard]] GarchLikelihood garch_loglik(std::span<const double> eps, const GarchParams& params,
                                           std::optional<double> initial_variance = std::nullopt);

/// Analytic gradient of garch_loglik with respect to (omega, alpha, beta). The initial
/// variance is data-determined and does not depend on the parameters.
[[nodiscard]] std::array<double, 3> garch_loglik_gradient(std::span<const double> eps, const GarchParams& params);

/// Diagnostics for one optimizer start.
struct GarchStart {
    GarchParams initial;
    double initial_log_likelihood = 0.0;
    GarchParams estimate;
    double log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool finite = false;
};

struct GarchFit {
    GarchParams params;
    double log_likelihood = 0.0;
    std::vector<double> cond_variance;
    std::size_t iterations = 0;
    bool converged = false;
    double mean_subtracted = 0.0;
    std::size_t n = 0;
    /// Set for 30 <= n < 100.
    bool low_sample_warning = false;
    std::vector<GarchStart> starts;
};

struct GarchFitOptions {
    /// Bound on the spread of the per-observation negative log-likelihood over the simplex.
    double tolerance = 1e-8;
    std::size_t max_iterations = 2000;
};

/// Minimum sample size accepted by garch_fit; below kGarchRecommendedSample a warning is set.
inline constexpr std::size_t kGarchMinimumSample = 30;
inline constexpr std::size_t kGarchRecommendedSample = 100;

/// Gaussian quasi-ML fit of GARCH(1,1) to returns minus their sample mean.
/// Nelder-Mead runs over omega = exp(a), (alpha, beta) = (e^u, e^v) / (1 + e^u + e^v)
/// from five fixed starts; the best finite result wins.
/// Throws InsufficientDataError for n < 30, EstimationError when no start is finite.
[[nodiscard]] GarchFit garch_fit(std::span<const double> returns, const GarchFitOptions& options = {});
[[nodiscard]] GarchFit garch_fit(const ReturnSeries& returns, const GarchFitOptions& options = {});

/// The fixed (omega, alpha, beta) starting points for a sample variance `variance`.
[[nodiscard]] std::vector<GarchParams> garch_start_points(double variance);

struct Innovation {
    enum class Kind { normal, student_t };
    Kind kind = Kind::normal;
    double df = 0.0;

    [[nodiscard]] static Innovation normal() { return {}; }
    [[nodiscard]] static Innovation student_t(double df) { return {Kind::student_t, df}; }
    [[nodiscard]] std::string describe() const;
};

/// eps_t = sigma_t * z_t with unit-variance i.i.d. innovations and sigma2_1 = omega / (1 - alpha - beta).
/// Dated on a synthetic weekday calendar. Deterministic per seed.
[[nodiscard]] ReturnSeries garch_simulate(const GarchParams& params, std::size_t n, std::uint64_t seed,
                                          Innovation innovation = Innovation::normal());

struct BandPoint {
    Date date;
    double normalized_return;
    double upper;
    double lower;
};

/// (r_t - mean) / s with s = sqrt(omega / (1 - alpha - beta)), and bands +-k sqrt(sigma2_t) / s.
[[nodiscard]] std::vector<BandPoint> volatility_bands(const ReturnSeries& returns, const GarchFit& fit, double k = 2.0);

}  // namespace stylized
