#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "stylized/moments.hpp"
#include "stylized/series.hpp"

namespace stylized {

/// Pointwise transform applied before computing autocorrelations.
enum class Transform { identity, square, absolute };

[[nodiscard]] std::string_view to_string(Transform transform);
[[nodiscard]] Transform parse_transform(std::string_view text);

/// Default number of lags for Ljung-Box (about one trading month).
inline constexpr std::size_t kDefaultLjungBoxLags = 21;
/// Default maximum lag for the McLeod-Li curve.
inline constexpr std::size_t kDefaultMcLeodLiLags = 26;

/// Sample autocorrelations rho_1..rho_m of a transformed series, with the
/// i.i.d. 95% band +-1.959964/sqrt(n).
struct AcfResult {
    Transform transform = Transform::identity;
    std::vector<double> rho;  ///< rho[k-1] is the lag-k autocorrelation
    double band_halfwidth = 0.0;
    std::size_t n = 0;

    [[nodiscard]] std::size_t max_lag() const noexcept { return rho.size(); }
};

/// Applies `transform` elementwise.
[[nodiscard]] std::vector<double> apply_transform(std::span<const double> values, Transform transform);

/// rho_k = sum_{t>k} (x_t - xbar)(x_{t-k} - xbar) / sum_t (x_t - xbar)^2 for k = 1..max_lag.
/// Throws DomainError unless 1 <= max_lag < n, DegenerateSeriesError for a constant
/// transformed series.
[[nodiscard]] AcfResult acf(std::span<const double> values, std::size_t max_lag,
                            Transform transform = Transform::identity);
[[nodiscard]] AcfResult acf(const ReturnSeries& returns, std::size_t max_lag,
                            Transform transform = Transform::identity);

/// LB(m) = T(T+2) sum_{l=1..m} rho_l^2 / (T - l), chi-square(m) null without
/// fitted-model correction.
[[nodiscard]] TestResult ljung_box(std::span<const double> values, std::size_t lags,
                                   Transform transform = Transform::identity);
[[nodiscard]] TestResult ljung_box(const ReturnSeries& returns, std::size_t lags,
                                   Transform transform = Transform::identity);

/// Ljung-Box from precomputed autocorrelations, using the first `lags` of them.
[[nodiscard]] TestResult ljung_box_from_acf(const AcfResult& acf, std::size_t lags);

/// Ljung-Box on squared values for every m in 1..max_lag.
[[nodiscard]] std::vector<std::pair<std::size_t, TestResult>> mcleod_li(std::span<const double> values,
                                                                        std::size_t max_lag);
[[nodiscard]] std::vector<std::pair<std::size_t, TestResult>> mcleod_li(const ReturnSeries& returns,
                                                                        std::size_t max_lag);

struct LagPair {
    Date date;  ///< date of r_t
    double previous;
    double current;
};

struct DateRange {
    Date first;
    Date last;  ///< inclusive
};

/// Consecutive (r_{t-1}, r_t) pairs. With a window, only pairs whose later date
/// lies inside it are kept.
[[nodiscard]] std::vector<LagPair> lag_pairs(const ReturnSeries& returns,
                                             std::optional<DateRange> window = std::nullopt);

}  // namespace stylized
