#include "stylized/series.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>

#include "stylized/errors.hpp"

namespace stylized {

namespace {

using namespace std::chrono;

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DomainError("invalid date '" + std::string(whole) + "'");
    }
    return value;
}

// Monday on or before `date`.
Date iso_week_start(Date date) {
    const auto wd = weekday{date}.iso_encoding();  // Monday = 1
    return date - days{wd - 1};
}

bool is_weekend(Date date) {
    const auto wd = weekday{date}.iso_encoding();
    return wd >= 6;
}

}  // namespace

Date parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw DomainError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    const year_month_day ymd{year{parse_int(text.substr(0, 4), text)},
                             month{static_cast<unsigned>(parse_int(text.substr(5, 2), text))},
                             day{static_cast<unsigned>(parse_int(text.substr(8, 2), text))}};
    if (!ymd.ok()) {
        throw DomainError("invalid calendar date '" + std::string(text) + "'");
    }
    return sys_days{ymd};
}

std::string format_iso_date(Date date) {
    const year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string_view to_string(TimeScale scale) {
    switch (scale) {
        case TimeScale::daily: return "daily";
        case TimeScale::weekly: return "weekly";
        case TimeScale::monthly: return "monthly";
        case TimeScale::quarterly: return "quarterly";
    }
    return "unknown";
}

TimeScale parse_time_scale(std::string_view text) {
    if (text == "daily") return TimeScale::daily;
    if (text == "weekly") return TimeScale::weekly;
    if (text == "monthly") return TimeScale::monthly;
    if (text == "quarterly") return TimeScale::quarterly;
    throw DomainError("unknown time scale '" + std::string(text) + "'");
}

long period_key(Date date, TimeScale scale) {
    switch (scale) {
        case TimeScale::daily:
            return date.time_since_epoch().count();
        case TimeScale::weekly:
            return iso_week_start(date).time_since_epoch().count();
        case TimeScale::monthly: {
            const year_month_day ymd{date};
            return static_cast<long>(static_cast<int>(ymd.year())) * 12 +
                   static_cast<long>(static_cast<unsigned>(ymd.month()) - 1);
        }
        case TimeScale::quarterly: {
            const year_month_day ymd{date};
            return static_cast<long>(static_cast<int>(ymd.year())) * 4 +
                   static_cast<long>((static_cast<unsigned>(ymd.month()) - 1) / 3);
        }
    }
    return 0;
}

PriceSeries::PriceSeries(std::string instrument_id, std::vector<PricePoint> observations,
                         TimeScale cadence)
    : instrument_id_(std::move(instrument_id)), observations_(std::move(observations)), cadence_(cadence) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& obs = observations_[i];
        if (!std::isfinite(obs.price) || obs.price <= 0.0) {
            throw DomainError("price at " + format_iso_date(obs.date) + " must be positive and finite");
        }
        if (i > 0 && !(observations_[i - 1].date < obs.date)) {
            throw DomainError("price dates must be strictly increasing (at " + format_iso_date(obs.date) + ")");
        }
    }
}

std::vector<double> PriceSeries::prices() const {
    std::vector<double> out;
    out.reserve(observations_.size());
    for (const auto& obs : observations_) out.push_back(obs.price);
    return out;
}

ReturnSeries::ReturnSeries(std::string instrument_id, TimeScale scale, std::vector<ReturnPoint> observations)
    : instrument_id_(std::move(instrument_id)), scale_(scale), observations_(std::move(observations)) {
    values_.reserve(observations_.size());
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        if (!std::isfinite(observations_[i].ret)) {
            throw DomainError("non-finite return at " + format_iso_date(observations_[i].date));
        }
        if (i > 0 && !(observations_[i - 1].date < observations_[i].date)) {
            throw DomainError("return dates must be strictly increasing");
        }
        values_.push_back(observations_[i].ret);
    }
}

std::vector<Date> weekday_calendar(Date first, std::size_t count) {
    std::vector<Date> dates;
    dates.reserve(count);
    Date d = first;
    while (dates.size() < count) {
        if (!is_weekend(d)) dates.push_back(d);
        d += days{1};
    }
    return dates;
}

ReturnSeries ReturnSeries::from_values(std::span<const double> values, std::string instrument_id) {
    const auto dates = weekday_calendar(sys_days{year{2000} / January / 3}, values.size());
    std::vector<ReturnPoint> obs;
    obs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) obs.push_back({dates[i], values[i]});
    return ReturnSeries(std::move(instrument_id), TimeScale::daily, std::move(obs));
}

ReturnSeries ReturnSeries::tail(std::size_t count) const {
    if (count >= observations_.size()) return *this;
    std::vector<ReturnPoint> obs(observations_.end() - static_cast<std::ptrdiff_t>(count), observations_.end());
    return ReturnSeries(instrument_id_, scale_, std::move(obs));
}

std::vector<ReturnPoint> simple_returns(const PriceSeries& prices) {
    const auto obs = prices.observations();
    if (obs.size() < 2) {
        throw InsufficientDataError("at least 2 prices are needed to form a return");
    }
    std::vector<ReturnPoint> out;
    out.reserve(obs.size() - 1);
    for (std::size_t t = 1; t < obs.size(); ++t) {
        out.push_back({obs[t].date, obs[t].price / obs[t - 1].price - 1.0});
    }
    return out;
}

ReturnSeries log_returns(const PriceSeries& prices) {
    const auto obs = prices.observations();
    if (obs.size() < 2) {
        throw InsufficientDataError("at least 2 prices are needed to form a return");
    }
    std::vector<ReturnPoint> out;
    out.reserve(obs.size() - 1);
    double prev = std::log(obs[0].price);
    for (std::size_t t = 1; t < obs.size(); ++t) {
        const double cur = std::log(obs[t].price);
        out.push_back({obs[t].date, 100.0 * (cur - prev)});
        prev = cur;
    }
    return ReturnSeries(prices.instrument_id(), prices.cadence(), std::move(out));
}

PriceSeries resample(const PriceSeries& prices, TimeScale scale) {
    if (scale == prices.cadence()) return prices;
    if (static_cast<int>(scale) < static_cast<int>(prices.cadence())) {
        throw DomainError("cannot resample " + std::string(to_string(prices.cadence())) + " prices to finer scale " +
                          std::string(to_string(scale)));
    }
    const auto obs = prices.observations();
    std::vector<PricePoint> out;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const bool last_in_period =
            i + 1 == obs.size() || period_key(obs[i + 1].date, scale) != period_key(obs[i].date, scale);
        if (last_in_period) out.push_back(obs[i]);
    }
    return PriceSeries(prices.instrument_id(), std::move(out), scale);
}

PriceSeries integrate_returns(const ReturnSeries& returns, double initial_price) {
    if (!(initial_price > 0.0)) throw DomainError("initial price must be positive");
    const auto obs = returns.observations();
    std::vector<PricePoint> out;
    out.reserve(obs.size() + 1);
    Date start = obs.empty() ? sys_days{year{2000} / January / 3} : obs.front().date - days{1};
    while (is_weekend(start)) start -= days{1};
    out.push_back({start, initial_price});
    double log_price = std::log(initial_price);
    for (const auto& r : obs) {
        log_price += r.ret / 100.0;
        out.push_back({r.date, std::exp(log_price)});
    }
    return PriceSeries(returns.instrument_id(), std::move(out), returns.scale());
}

}  // namespace stylized
