#include "stylized/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylized/errors.hpp"

namespace stylized {

namespace {

struct CentralMoments {
    double mean;
    double m2;
    double m3;
    double m4;
};

CentralMoments central_moments(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    return {mean, m2 / n, m3 / n, m4 / n};
}

// A sample is constant when every value equals the first; testing m2 == 0 alone
// would miss rounding residue in the mean.
bool is_constant(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

}  // namespace

double median(std::span<const double> values) {
    if (values.empty()) throw InsufficientDataError("median of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    const double upper = sorted[mid];
    if (sorted.size() % 2 == 1) return upper;
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

SummaryStats summarize(std::span<const double> values) {
    if (values.size() < 2) throw InsufficientDataError("summary statistics need at least 2 observations");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const auto m = central_moments(values);
    const double n = static_cast<double>(values.size());

    SummaryStats s;
    s.n = values.size();
    s.mean = m.mean;
    s.median = median(values);
    s.min = *mn;
    s.max = *mx;
    s.degenerate = is_constant(values);
    if (s.degenerate) return s;
    s.std_dev = std::sqrt(m.m2 * n / (n - 1.0));
    s.skewness = m.m3 / std::pow(m.m2, 1.5);
    s.kurtosis = m.m4 / (m.m2 * m.m2);
    return s;
}

SummaryStats summarize(const ReturnSeries& returns) { return summarize(returns.values()); }

TestResult jarque_bera_from_moments(double skewness, double kurtosis, std::size_t sample_size) {
    const double t = static_cast<double>(sample_size);
    const double excess = kurtosis - 3.0;
    const double jb = skewness * skewness / (6.0 / t) + excess * excess / (24.0 / t);
    const auto null = Distribution::chi_square(2.0);
    TestResult r;
    r.test_name = "jarque_bera";
    r.statistic = jb;
    r.df = 2.0;
    r.p_value = survival(null, jb);
    r.null_hypothesis = "skewness = 0 and kurtosis = 3 (normality)";
    r.null_distribution = null.describe();
    r.sample_size = sample_size;
    return r;
}

TestResult jarque_bera(std::span<const double> values) {
    if (values.size() < kMinJarqueBeraSample) {
        throw InsufficientDataError("Jarque-Bera needs at least 8 observations");
    }
    if (is_constant(values)) throw DegenerateSeriesError("Jarque-Bera of a constant series is undefined");
    const auto m = central_moments(values);
    return jarque_bera_from_moments(m.m3 / std::pow(m.m2, 1.5), m.m4 / (m.m2 * m.m2), values.size());
}

TestResult jarque_bera(const ReturnSeries& returns) { return jarque_bera(returns.values()); }

TestResult kolmogorov_smirnov(std::span<const double> values, const Distribution& reference) {
    if (values.size() < 2) throw InsufficientDataError("Kolmogorov-Smirnov needs at least 2 observations");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(reference, sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    const auto null = Distribution::kolmogorov();
    TestResult r;
    r.test_name = "kolmogorov_smirnov";
    r.statistic = d;
    r.p_value = survival(null, std::sqrt(n) * d);
    r.null_hypothesis = "sample drawn from " + reference.describe();
    r.null_distribution = "kolmogorov (asymptotic, of sqrt(n) * D)";
    r.sample_size = sorted.size();
    return r;
}

TestResult kolmogorov_smirnov(const ReturnSeries& returns, const Distribution& reference) {
    return kolmogorov_smirnov(returns.values(), reference);
}

std::vector<AggregationRow> aggregation_scan(const PriceSeries& prices, std::span<const TimeScale> scales) {
    std::vector<AggregationRow> rows;
    rows.reserve(scales.size());
    for (const TimeScale scale : scales) {
        AggregationRow row;
        row.scale = scale;
        try {
            const auto returns = log_returns(resample(prices, scale));
            row.n_returns = returns.size();
            row.summary = summarize(returns);
            if (row.summary->degenerate) {
                row.flag = "degenerate_series";
            } else if (returns.size() < kMinJarqueBeraSample) {
                row.flag = "too_few_observations";
            } else {
                row.jarque_bera = jarque_bera(returns);
            }
        } catch (const InsufficientDataError&) {
            row.flag = "insufficient_data";
        } catch (const DomainError&) {
            row.flag = "finer_than_input_cadence";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace stylized
