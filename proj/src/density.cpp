#include "stylized/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "stylized/errors.hpp"
#include "stylized/moments.hpp"

namespace stylized {

namespace {

struct MeanSd {
    double mean;
    double sd;  // divisor n - 1
};

MeanSd mean_sd(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

// Type-7 (linear interpolation) quantile of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

bool is_constant(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

}  // namespace

double ReferenceFamily::fitted_pdf(double x, double mean, double sd) const {
    if (kind == Distribution::Kind::student_t) {
        const double scale = sd * std::sqrt((df - 2.0) / df);
        return pdf(Distribution::student_t(df), (x - mean) / scale) / scale;
    }
    return pdf(Distribution::normal(mean, sd), x);
}

std::string ReferenceFamily::describe() const {
    if (kind == Distribution::Kind::student_t) {
        return Distribution::student_t(df).describe() + " scaled to unit variance, fitted to sample mean/sd";
    }
    return "normal fitted to sample mean/sd";
}

DensityCurve histogram(std::span<const double> values, std::size_t bins) {
    if (bins < 1) throw DomainError("histogram needs at least one bin");
    if (values.size() < 2) throw InsufficientDataError("histogram needs at least 2 observations");
    if (is_constant(values)) throw DegenerateSeriesError("histogram of a constant series has zero-width range");

    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn;
    const double hi = *mx;
    const double width = (hi - lo) / static_cast<double>(bins);

    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - lo) / width);
        counts[std::min(idx, bins - 1)] += 1;
    }

    const auto fit = mean_sd(values);
    const auto reference = Distribution::normal(fit.mean, fit.sd);
    const double n = static_cast<double>(values.size());

    DensityCurve curve;
    curve.kind = DensityKind::histogram;
    curve.reference_label = ReferenceFamily::normal().describe();
    curve.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) curve.bin_edges[i] = lo + width * static_cast<double>(i);
    curve.bin_edges.back() = hi;
    for (std::size_t i = 0; i < bins; ++i) {
        const double center = 0.5 * (curve.bin_edges[i] + curve.bin_edges[i + 1]);
        curve.grid.push_back(center);
        curve.empirical.push_back(static_cast<double>(counts[i]) / (n * width));
        curve.reference.push_back(pdf(reference, center));
    }
    return curve;
}

DensityCurve histogram(const ReturnSeries& returns, std::size_t bins) { return histogram(returns.values(), bins); }

double silverman_bandwidth(std::span<const double> values) {
    if (values.size() < 2) throw InsufficientDataError("bandwidth selection needs at least 2 observations");
    if (is_constant(values)) throw DegenerateSeriesError("bandwidth of a constant series is undefined");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double sd = mean_sd(values).sd;
    const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0)) spread = sd;
    return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

DensityCurve kde(std::span<const double> values, std::size_t grid_size, std::optional<double> bandwidth,
                 ReferenceFamily reference) {
    if (values.size() < 2) throw InsufficientDataError("kernel density needs at least 2 observations");
    if (grid_size < 2) throw DomainError("kernel density grid needs at least 2 points");
    if (is_constant(values)) throw DegenerateSeriesError("kernel density of a constant series is undefined");
    if (bandwidth && !(*bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
    if (reference.kind == Distribution::Kind::student_t && !(reference.df > 2.0)) {
        throw DomainError("unit-variance Student-t reference requires df > 2");
    }

    const double h = bandwidth ? *bandwidth : silverman_bandwidth(values);
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn - 3.0 * h;
    const double hi = *mx + 3.0 * h;
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);
    const double norm = 1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    const auto fit = mean_sd(values);

    DensityCurve curve;
    curve.kind = DensityKind::kde;
    curve.bandwidth = h;
    curve.reference_label = reference.describe();
    curve.grid.resize(grid_size);
    curve.empirical.resize(grid_size);
    curve.reference.resize(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double x = i + 1 == grid_size ? hi : lo + step * static_cast<double>(i);
        double sum = 0.0;
        for (double v : values) {
            const double u = (x - v) / h;
            sum += std::exp(-0.5 * u * u);
        }
        curve.grid[i] = x;
        curve.empirical[i] = sum * norm;
        curve.reference[i] = reference.fitted_pdf(x, fit.mean, fit.sd);
    }
    return curve;
}

DensityCurve kde(const ReturnSeries& returns, std::size_t grid_size, std::optional<double> bandwidth,
                 ReferenceFamily reference) {
    return kde(returns.values(), grid_size, bandwidth, reference);
}

QQPoints qq_points(std::span<const double> values, const Distribution& reference) {
    if (values.size() < 2) throw InsufficientDataError("QQ plot needs at least 2 observations");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    QQPoints out;
    out.reference = reference;
    double quantile_scale = 1.0;
    if (reference.kind() == Distribution::Kind::student_t) {
        const double df = reference.df();
        if (!(df > 2.0)) throw DomainError("Student-t QQ reference requires df > 2 (finite variance)");
        if (is_constant(values)) throw DegenerateSeriesError("cannot standardize a constant series");
        const auto fit = mean_sd(values);
        for (auto& v : sorted) v = (v - fit.mean) / fit.sd;
        quantile_scale = std::sqrt((df - 2.0) / df);
        out.standardized = true;
    }

    const double n = static_cast<double>(sorted.size());
    out.points.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double p = (static_cast<double>(i) + 0.5) / n;
        out.points.push_back({quantile(reference, p) * quantile_scale, sorted[i]});
    }
    return out;
}

QQPoints qq_points(const ReturnSeries& returns, const Distribution& reference) {
    return qq_points(returns.values(), reference);
}

}  // namespace stylized
