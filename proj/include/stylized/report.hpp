#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stylized/density.hpp"
#include "stylized/dependence.hpp"
#include "stylized/garch.hpp"
#include "stylized/moments.hpp"
#include "stylized/series.hpp"

namespace stylized {

inline constexpr int kSchemaVersion = 1;

struct ReportConfig {
    std::size_t lags = kDefaultLjungBoxLags;
    std::size_t ml_lags = kDefaultMcLeodLiLags;
    std::vector<TimeScale> scales{TimeScale::daily, TimeScale::weekly, TimeScale::monthly, TimeScale::quarterly};
    double t_df = 4.0;
    double band_k = 2.0;
    /// Extra Ljung-Box rows on the most recent N returns.
    std::vector<std::size_t> subsample_last;
    /// Recorded in metadata; the report itself draws no random numbers.
    std::uint64_t seed = 0;
    bool garch = true;
    /// Histogram bins; Sturges' rule when unset.
    std::optional<std::size_t> histogram_bins;
    std::size_t kde_grid = 512;
    std::optional<DateRange> lag_window;
    /// Fixed timestamp for reproducible output; the current UTC time when unset.
    std::optional<std::string> generated_at;
    /// Run independent stages on worker threads.
    bool concurrent = true;
};

/// A stage that could not produce its result. The rest of the report is unaffected.
struct StageError {
    std::string stage;
    /// "insufficient_data", "degenerate_series", "domain_error", "estimation_failure", "error".
    std::string kind;
    std::string message;
};

struct LjungBoxRow {
    Transform transform = Transform::identity;
    /// "full" or "last_<N>".
    std::string subsample;
    std::size_t sample_size = 0;
    TestResult result;
};

struct McLeodLiPoint {
    std::size_t lag = 0;
    TestResult result;
};

struct NamedDensity {
    std::string name;  ///< e.g. "histogram_daily", "kde"
    DensityCurve curve;
};

struct NamedQQ {
    std::string name;  ///< "normal" or "student_t"
    QQPoints qq;
};

struct GarchReport {
    GarchFit fit;
    std::vector<BandPoint> bands;
    double band_k = 2.0;
};

/// Everything the stylized-facts analysis produces for one instrument.
struct ReportBundle {
    int schema_version = kSchemaVersion;
    std::string instrument_id;
    std::string generated_at;
    std::size_t n_prices = 0;
    std::string first_date;
    std::string last_date;

    std::vector<ReturnPoint> returns;
    std::optional<SummaryStats> summary;
    std::vector<TestResult> tests;
    std::vector<AggregationRow> aggregation;
    std::vector<AcfResult> acf;
    std::vector<LjungBoxRow> ljung_box;
    std::vector<McLeodLiPoint> mcleod_li;
    std::vector<NamedDensity> density;
    std::vector<NamedQQ> qq;
    std::vector<LagPair> lag_pairs;
    std::optional<GarchReport> garch;

    std::map<std::string, std::string> metadata;
    std::vector<StageError> stage_errors;

    /// True when any stage failed or any aggregation row is flagged.
    [[nodiscard]] bool partial() const;
};

/// Runs the whole analysis. Stage failures are recorded in `stage_errors`; only an
/// invalid price series (fewer than 2 prices) raises.
[[nodiscard]] ReportBundle run_report(const PriceSeries& prices, const ReportConfig& config = {});

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
[[nodiscard]] std::string utc_timestamp();

}  // namespace stylized
