#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylized/series.hpp"
#include "stylized/special.hpp"

namespace stylized {

enum class DensityKind { histogram, kde };

/// Reference family overlaid on an empirical density, location-scale fitted to the
/// sample mean and sample standard deviation. A Student-t reference is rescaled to
/// unit variance first, so it requires df > 2.
struct ReferenceFamily {
    Distribution::Kind kind = Distribution::Kind::normal;
    double df = 0.0;

    [[nodiscard]] static ReferenceFamily normal() { return {}; }
    [[nodiscard]] static ReferenceFamily student_t(double df) { return {Distribution::Kind::student_t, df}; }

    /// Density at x of the family fitted to (mean, sd).
    [[nodiscard]] double fitted_pdf(double x, double mean, double sd) const;
    [[nodiscard]] std::string describe() const;
};

/// Empirical density on a grid with a reference density on the same grid.
struct DensityCurve {
    DensityKind kind = DensityKind::histogram;
    std::vector<double> grid;       ///< bin centers (histogram) or evaluation points (kde)
    std::vector<double> empirical;  ///< density, same length as grid
    std::vector<double> reference;  ///< reference density, same length as grid
    std::vector<double> bin_edges;  ///< histogram only, grid.size() + 1 entries
    double bandwidth = 0.0;         ///< kde only
    std::string reference_label;
};

struct QQPoint {
    double theoretical;
    double sample;
};

/// QQ-plot coordinates with Hazen plotting positions (i - 0.5) / n.
struct QQPoints {
    Distribution reference = Distribution::normal();
    /// True when the sample was standardized and t quantiles rescaled to unit variance.
    bool standardized = false;
    std::vector<QQPoint> points;
};

/// Equal-width bins over [min, max], heights normalized so bar areas sum to 1.
/// The reference is normal(mean, sample sd) evaluated at bin centers.
[[nodiscard]] DensityCurve histogram(std::span<const double> values, std::size_t bins);
[[nodiscard]] DensityCurve histogram(const ReturnSeries& returns, std::size_t bins);

/// 0.9 * min(sd, IQR / 1.34) * n^(-1/5); falls back to sd when the IQR is zero.
[[nodiscard]] double silverman_bandwidth(std::span<const double> values);

/// Gaussian-kernel density on `grid_size` uniform points spanning [min - 3h, max + 3h].
[[nodiscard]] DensityCurve kde(std::span<const double> values, std::size_t grid_size,
                               std::optional<double> bandwidth = std::nullopt,
                               ReferenceFamily reference = ReferenceFamily::normal());
[[nodiscard]] DensityCurve kde(const ReturnSeries& returns, std::size_t grid_size,
                               std::optional<double> bandwidth = std::nullopt,
                               ReferenceFamily reference = ReferenceFamily::normal());

/// Sorted sample against reference quantiles. For a Student-t reference the sample is
/// standardized (sample mean, sample sd) and the quantiles are scaled by sqrt((df-2)/df);
/// other references are compared on the raw scale.
[[nodiscard]] QQPoints qq_points(std::span<const double> values, const Distribution& reference);
[[nodiscard]] QQPoints qq_points(const ReturnSeries& returns, const Distribution& reference);

}  // namespace stylized
