#include "stylized/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stylized/errors.hpp"

namespace stylized {

std::string_view to_string(Transform transform) {
    switch (transform) {
        case Transform::identity: return "identity";
        case Transform::square: return "square";
        case Transform::absolute: return "absolute";
    }
    return "unknown";
}

Transform parse_transform(std::string_view text) {
    if (text == "identity" || text == "raw") return Transform::identity;
    if (text == "square" || text == "squared") return Transform::square;
    if (text == "absolute" || text == "abs") return Transform::absolute;
    throw DomainError("unknown transform '" + std::string(text) + "'");
}

std::vector<double> apply_transform(std::span<const double> values, Transform transform) {
    std::vector<double> out(values.begin(), values.end());
    switch (transform) {
        case Transform::identity: break;
        case Transform::square:
            for (auto& v : out) v *= v;
            break;
        case Transform::absolute:
            for (auto& v : out) v = std::fabs(v);
            break;
    }
    return out;
}

AcfResult acf(std::span<const double> values, std::size_t max_lag, Transform transform) {
    const std::size_t n = values.size();
    if (max_lag < 1 || max_lag >= n) {
        throw DomainError("acf requires 1 <= max_lag < n (max_lag = " + std::to_string(max_lag) +
                          ", n = " + std::to_string(n) + ")");
    }
    auto x = apply_transform(values, transform);
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
        throw DegenerateSeriesError("autocorrelation of a constant series is undefined");
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    for (auto& v : x) v -= mean;

    double gamma0 = 0.0;
    for (double v : x) gamma0 += v * v;

    AcfResult result;
    result.transform = transform;
    result.n = n;
    result.band_halfwidth = quantile(Distribution::normal(), 0.975) / std::sqrt(static_cast<double>(n));
    result.rho.resize(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double gamma = 0.0;
        for (std::size_t t = k; t < n; ++t) gamma += x[t] * x[t - k];
        result.rho[k - 1] = gamma / gamma0;
    }
    return result;
}

AcfResult acf(const ReturnSeries& returns, std::size_t max_lag, Transform transform) {
    return acf(returns.values(), max_lag, transform);
}

TestResult ljung_box_from_acf(const AcfResult& acf, std::size_t lags) {
    if (lags < 1 || lags > acf.max_lag()) {
        throw DomainError("ljung_box lags must lie in 1..max_lag of the supplied autocorrelations");
    }
    const double t = static_cast<double>(acf.n);
    double sum = 0.0;
    for (std::size_t l = 1; l <= lags; ++l) {
        const double rho = acf.rho[l - 1];
        sum += rho * rho / (t - static_cast<double>(l));
    }
    const double statistic = t * (t + 2.0) * sum;
    const auto null = Distribution::chi_square(static_cast<double>(lags));

    TestResult r;
    r.test_name = "ljung_box";
    r.statistic = statistic;
    r.df = static_cast<double>(lags);
    r.p_value = survival(null, statistic);
    r.null_hypothesis = "rho_1 = ... = rho_" + std::to_string(lags) + " = 0 (" +
                        std::string(to_string(acf.transform)) + " transform)";
    r.null_distribution = null.describe();
    r.sample_size = acf.n;
    return r;
}

TestResult ljung_box(std::span<const double> values, std::size_t lags, Transform transform) {
    return ljung_box_from_acf(acf(values, lags, transform), lags);
}

TestResult ljung_box(const ReturnSeries& returns, std::size_t lags, Transform transform) {
    return ljung_box(returns.values(), lags, transform);
}

std::vector<std::pair<std::size_t, TestResult>> mcleod_li(std::span<const double> values, std::size_t max_lag) {
    const auto squared = acf(values, max_lag, Transform::square);
    std::vector<std::pair<std::size_t, TestResult>> out;
    out.reserve(max_lag);
    for (std::size_t m = 1; m <= max_lag; ++m) {
        auto r = ljung_box_from_acf(squared, m);
        r.test_name = "mcleod_li";
        out.emplace_back(m, std::move(r));
    }
    return out;
}

std::vector<std::pair<std::size_t, TestResult>> mcleod_li(const ReturnSeries& returns, std::size_t max_lag) {
    return mcleod_li(returns.values(), max_lag);
}

std::vector<LagPair> lag_pairs(const ReturnSeries& returns, std::optional<DateRange> window) {
    const auto obs = returns.observations();
    std::vector<LagPair> out;
    if (obs.size() < 2) return out;
    out.reserve(obs.size() - 1);
    for (std::size_t t = 1; t < obs.size(); ++t) {
        if (window && (obs[t].date < window->first || window->last < obs[t].date)) continue;
        out.push_back({obs[t].date, obs[t - 1].ret, obs[t].ret});
    }
    return out;
}

}  // namespace stylized
