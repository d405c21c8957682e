#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylized/series.hpp"
#include "stylized/special.hpp"

namespace stylized {

/// Table-style summary of a return sample.
///
/// Skewness and kurtosis are population-moment ratios (divisor n throughout);
/// `std_dev` is the sample standard deviation (divisor n - 1). Kurtosis is raw,
/// so a normal sample gives about 3. For a constant sample `degenerate` is set
/// and skewness/kurtosis are empty.
struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double std_dev = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    bool degenerate = false;
};

/// Outcome of a hypothesis test.
struct TestResult {
    std::string test_name;
    double statistic = 0.0;
    std::optional<double> df;
    double p_value = 1.0;
    std::string null_hypothesis;
    /// Reference distribution the p-value is computed from, e.g. "chi_square(2)".
    std::string null_distribution;
    std::size_t sample_size = 0;
};

/// Throws InsufficientDataError for n < 2.
[[nodiscard]] SummaryStats summarize(std::span<const double> values);
[[nodiscard]] SummaryStats summarize(const ReturnSeries& returns);

/// Median with the even-length convention (mean of the two central order statistics).
[[nodiscard]] double median(std::span<const double> values);

/// JB = S^2 / (6/T) + (K - 3)^2 / (24/T), chi-square(2) null.
/// Throws InsufficientDataError for n < 8 and DegenerateSeriesError for a constant sample.
[[nodiscard]] TestResult jarque_bera(std::span<const double> values);
[[nodiscard]] TestResult jarque_bera(const ReturnSeries& returns);

/// JB statistic and p-value straight from given moments (no data needed).
[[nodiscard]] TestResult jarque_bera_from_moments(double skewness, double kurtosis, std::size_t sample_size);

/// One-sample KS distance against a fully specified reference; the p-value uses the
/// asymptotic Kolmogorov law of sqrt(n) * D. With parameters estimated from the same
/// data the p-value is conservative.
[[nodiscard]] TestResult kolmogorov_smirnov(std::span<const double> values, const Distribution& reference);
[[nodiscard]] TestResult kolmogorov_smirnov(const ReturnSeries& returns, const Distribution& reference);

/// Minimum sample size for a Jarque-Bera row in an aggregation scan.
inline constexpr std::size_t kMinJarqueBeraSample = 8;

/// One row of the aggregational-Gaussianity table.
struct AggregationRow {
    TimeScale scale = TimeScale::daily;
    std::size_t n_returns = 0;
    std::optional<SummaryStats> summary;
    std::optional<TestResult> jarque_bera;
    /// Empty when both summary and test are present; otherwise one of
    /// "too_few_observations", "degenerate_series", "insufficient_data",
    /// "finer_than_input_cadence".
    std::string flag;
};

/// Summary and Jarque-Bera of log returns resampled at each scale. Failures of a
/// single scale are flagged in its row and never abort the scan.
[[nodiscard]] std::vector<AggregationRow> aggregation_scan(const PriceSeries& prices,
                                                           std::span<const TimeScale> scales);

}  // namespace stylized
