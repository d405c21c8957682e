#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylized {

using Date = std::chrono::sys_days;

/// Parses `YYYY-MM-DD`. Throws DomainError on malformed or invalid dates.
[[nodiscard]] Date parse_iso_date(std::string_view text);
[[nodiscard]] std::string format_iso_date(Date date);

/// Sampling cadence of a series. Weekly periods are ISO weeks (Monday to Sunday);
/// monthly and quarterly periods are calendar months and quarters.
enum class TimeScale { daily = 0, weekly = 1, monthly = 2, quarterly = 3 };

[[nodiscard]] std::string_view to_string(TimeScale scale);
[[nodiscard]] TimeScale parse_time_scale(std::string_view text);

/// Identifier of the calendar period containing `date` at `scale`. Equal keys
/// mean the same period; keys increase with time.
[[nodiscard]] long period_key(Date date, TimeScale scale);

struct PricePoint {
    Date date;
    double price;
};

struct ReturnPoint {
    Date date;
    double ret;  ///< percent units for log returns
};

/// Dated, strictly positive closing prices for one instrument. Immutable.
class PriceSeries {
public:
    /// Validates ordering (strictly increasing dates) and positivity.
    /// Throws DomainError on violation.
    PriceSeries(std::string instrument_id, std::vector<PricePoint> observations,
                TimeScale cadence = TimeScale::daily);

    [[nodiscard]] const std::string& instrument_id() const noexcept { return instrument_id_; }
    [[nodiscard]] std::span<const PricePoint> observations() const noexcept { return observations_; }
    [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
    [[nodiscard]] TimeScale cadence() const noexcept { return cadence_; }
    [[nodiscard]] std::vector<double> prices() const;

private:
    std::string instrument_id_;
    std::vector<PricePoint> observations_;
    TimeScale cadence_;
};

/// Dated percentual log returns at a declared time scale. Immutable.
class ReturnSeries {
public:
    /// Throws DomainError unless dates are strictly increasing and values finite.
    ReturnSeries(std::string instrument_id, TimeScale scale, std::vector<ReturnPoint> observations);

    /// Attaches synthetic weekday dates (Mon-Fri, starting 2000-01-03) to bare values.
    [[nodiscard]] static ReturnSeries from_values(std::span<const double> values,
                                                  std::string instrument_id = "synthetic");

    [[nodiscard]] const std::string& instrument_id() const noexcept { return instrument_id_; }
    [[nodiscard]] TimeScale scale() const noexcept { return scale_; }
    [[nodiscard]] std::span<const ReturnPoint> observations() const noexcept { return observations_; }
    [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    /// Last `count` observations (the whole series if `count >= size()`).
    [[nodiscard]] ReturnSeries tail(std::size_t count) const;

private:
    std::string instrument_id_;
    TimeScale scale_;
    std::vector<ReturnPoint> observations_;
    std::vector<double> values_;
};

/// Consecutive weekdays starting at `first` (skipped forward to a weekday).
[[nodiscard]] std::vector<Date> weekday_calendar(Date first, std::size_t count);

/// P_t / P_{t-1} - 1, dated at the later observation.
[[nodiscard]] std::vector<ReturnPoint> simple_returns(const PriceSeries& prices);

/// 100 * (ln P_t - ln P_{t-1}), dated at the later observation.
[[nodiscard]] ReturnSeries log_returns(const PriceSeries& prices);

/// Last close of each calendar period at `scale`. Identity when `scale` equals
/// the input cadence; DomainError when it is finer.
[[nodiscard]] PriceSeries resample(const PriceSeries& prices, TimeScale scale);

/// Inverse of log_returns: the price path starting at `initial_price` on the
/// day before the first return (one weekday earlier).
[[nodiscard]] PriceSeries integrate_returns(const ReturnSeries& returns, double initial_price = 100.0);

}  // namespace stylized
