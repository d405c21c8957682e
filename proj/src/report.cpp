#include "stylized/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <future>
#include <sstream>

#include "stylized/errors.hpp"

namespace stylized {

namespace {

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient_data";
    if (dynamic_cast<const DegenerateSeriesError*>(&e)) return "degenerate_series";
    if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
    if (dynamic_cast<const EstimationError*>(&e)) return "estimation_failure";
    return "error";
}

// Runs `body`, recording any failure against `stage` instead of propagating it.
void guarded(std::vector<StageError>& errors, const std::string& stage, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        errors.push_back({stage, error_kind(e), e.what()});
    }
}

bool constant(std::span<const double> values) {
    for (double v : values) {
        if (v != values.front()) return false;
    }
    return true;
}

std::size_t sturges_bins(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) + 1.0));
}

ReportBundle moments_stage(const PriceSeries& prices, const ReturnSeries& returns, const ReportConfig& config) {
    ReportBundle out;
    auto& errors = out.stage_errors;
    guarded(errors, "summarize", [&] { out.summary = summarize(returns); });
    guarded(errors, "jarque_bera", [&] { out.tests.push_back(jarque_bera(returns)); });
    guarded(errors, "kolmogorov_smirnov", [&] {
        if (constant(returns.values())) {
            throw DegenerateSeriesError("cannot fit a normal reference to a constant series");
        }
        const auto s = summarize(returns);
        out.tests.push_back(kolmogorov_smirnov(returns, Distribution::normal(s.mean, s.std_dev)));
    });
    guarded(errors, "aggregation_scan", [&] { out.aggregation = aggregation_scan(prices, config.scales); });
    return out;
}

ReportBundle dependence_stage(const ReturnSeries& returns, const ReportConfig& config) {
    ReportBundle out;
    auto& errors = out.stage_errors;
    for (const auto transform : {Transform::identity, Transform::square, Transform::absolute}) {
        const std::string name(to_string(transform));
        guarded(errors, "acf." + name, [&] { out.acf.push_back(acf(returns, config.lags, transform)); });
        guarded(errors, "ljung_box." + name + ".full", [&] {
            const auto r = ljung_box(returns, config.lags, transform);
            out.ljung_box.push_back({transform, "full", returns.size(), r});
        });
        for (const std::size_t last : config.subsample_last) {
            const std::string label = "last_" + std::to_string(last);
            guarded(errors, "ljung_box." + name + "." + label, [&] {
                const auto sub = returns.tail(last);
                const auto r = ljung_box(sub, config.lags, transform);
                out.ljung_box.push_back({transform, label, sub.size(), r});
            });
        }
    }
    guarded(errors, "mcleod_li", [&] {
        for (auto& [lag, result] : mcleod_li(returns, config.ml_lags)) out.mcleod_li.push_back({lag, result});
    });
    guarded(errors, "lag_pairs", [&] { out.lag_pairs = lag_pairs(returns, config.lag_window); });
    return out;
}

ReportBundle density_stage(const PriceSeries& prices, const ReturnSeries& returns, const ReportConfig& config) {
    ReportBundle out;
    auto& errors = out.stage_errors;
    for (const auto scale : config.scales) {
        const std::string name = "histogram_" + std::string(to_string(scale));
        guarded(errors, name, [&] {
            const auto r = scale == returns.scale() ? returns : log_returns(resample(prices, scale));
            const std::size_t bins = config.histogram_bins.value_or(sturges_bins(r.size()));
            out.density.push_back({name, histogram(r, bins)});
        });
    }
    guarded(errors, "kde", [&] {
        out.density.push_back(
            {"kde", kde(returns, config.kde_grid, std::nullopt, ReferenceFamily::student_t(config.t_df))});
    });
    guarded(errors, "qq.normal", [&] {
        if (constant(returns.values())) {
            throw DegenerateSeriesError("cannot fit a normal reference to a constant series");
        }
        const auto s = summarize(returns);
        out.qq.push_back({"normal", qq_points(returns, Distribution::normal(s.mean, s.std_dev))});
    });
    guarded(errors, "qq.student_t",
            [&] { out.qq.push_back({"student_t", qq_points(returns, Distribution::student_t(config.t_df))}); });
    return out;
}

ReportBundle garch_stage(const ReturnSeries& returns, const ReportConfig& config) {
    ReportBundle out;
    if (!config.garch) return out;
    guarded(out.stage_errors, "garch_fit", [&] {
        GarchReport g;
        g.fit = garch_fit(returns);
        g.band_k = config.band_k;
        g.bands = volatility_bands(returns, g.fit, config.band_k);
        out.garch = std::move(g);
    });
    return out;
}

std::string join_sizes(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values[i]);
    }
    return out.empty() ? "none" : out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::map<std::string, std::string> build_metadata(const ReportConfig& config) {
    std::string scales;
    for (std::size_t i = 0; i < config.scales.size(); ++i) {
        if (i) scales += ",";
        scales += std::string(to_string(config.scales[i]));
    }
    return {
        {"series.return_definition", "100 * (ln P_t - ln P_{t-1}), dated at the later observation"},
        {"series.resampling", "last close of each calendar period; weekly = ISO week (Mon-Sun)"},
        {"series.scales", scales},
        {"moments.skewness_kurtosis_divisor", "n (population moments, sigma with divisor n)"},
        {"moments.std_dev_divisor", "n - 1 (sample standard deviation)"},
        {"moments.kurtosis_convention", "raw (normal = 3); Jarque-Bera subtracts 3"},
        {"moments.median_even_length", "mean of the two central order statistics"},
        {"normality.jarque_bera_null", "chi_square(2); p = exp(-JB/2)"},
        {"normality.ks_reference",
         "normal(sample mean, sample sd); asymptotic Kolmogorov p-value, conservative with estimated parameters"},
        {"dependence.acf_denominator", "full-sample sum of squares (gamma_0 with divisor n)"},
        {"dependence.confidence_band", "+-z_0.975 / sqrt(n) (i.i.d. band)"},
        {"dependence.ljung_box_df", "m (no fitted-model correction)"},
        {"dependence.lags", std::to_string(config.lags)},
        {"dependence.mcleod_li_max_lag", std::to_string(config.ml_lags)},
        {"dependence.subsamples", join_sizes(config.subsample_last)},
        {"density.histogram_bins",
         config.histogram_bins ? std::to_string(*config.histogram_bins) : "sturges: ceil(log2(n) + 1)"},
        {"density.histogram_reference", "normal(sample mean, sample sd) at bin centers"},
        {"density.kde_kernel", "gaussian"},
        {"density.kde_bandwidth", "silverman: 0.9 * min(sd, IQR / 1.34) * n^(-1/5), IQR by type-7 quantiles"},
        {"density.kde_grid", std::to_string(config.kde_grid) + " points on [min - 3h, max + 3h]"},
        {"density.qq_plotting_position", "hazen: (i - 0.5) / n"},
        {"density.student_t_reference",
         "student_t(" + format_double(config.t_df) +
             ") scaled by sqrt((df - 2) / df) to unit variance; sample standardized by sample mean and sd"},
        {"garch.model", "GARCH(1,1), gaussian quasi-likelihood, returns minus sample mean"},
        {"garch.enabled", config.garch ? "true" : "false"},
        {"garch.initial_variance", "mean of squared demeaned returns"},
        {"garch.optimizer",
         "nelder-mead on (ln omega, logistic alpha/beta), 5 fixed starts, stop at spread < 1e-8 of "
         "per-observation -loglik or 2000 iterations, one restart"},
        {"garch.band_formula",
         "normalized = (r - mean) / sqrt(omega / (1 - alpha - beta)); bands = +-k * sigma_t on the same scale"},
        {"garch.band_k", format_double(config.band_k)},
        {"report.seed", std::to_string(config.seed)},
    };
}

void merge(ReportBundle& into, ReportBundle&& part) {
    if (part.summary) into.summary = std::move(part.summary);
    for (auto& t : part.tests) into.tests.push_back(std::move(t));
    if (!part.aggregation.empty()) into.aggregation = std::move(part.aggregation);
    for (auto& a : part.acf) into.acf.push_back(std::move(a));
    for (auto& l : part.ljung_box) into.ljung_box.push_back(std::move(l));
    for (auto& m : part.mcleod_li) into.mcleod_li.push_back(std::move(m));
    for (auto& d : part.density) into.density.push_back(std::move(d));
    for (auto& q : part.qq) into.qq.push_back(std::move(q));
    if (!part.lag_pairs.empty()) into.lag_pairs = std::move(part.lag_pairs);
    if (part.garch) into.garch = std::move(part.garch);
    for (auto& e : part.stage_errors) into.stage_errors.push_back(std::move(e));
}

}  // namespace

bool ReportBundle::partial() const {
    if (!stage_errors.empty()) return true;
    for (const auto& row : aggregation) {
        if (!row.flag.empty()) return true;
    }
    return false;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ReportBundle run_report(const PriceSeries& prices, const ReportConfig& config) {
    const ReturnSeries returns = log_returns(prices);

    ReportBundle bundle;
    bundle.instrument_id = prices.instrument_id();
    bundle.generated_at = config.generated_at ? *config.generated_at : utc_timestamp();
    bundle.n_prices = prices.size();
    bundle.first_date = format_iso_date(prices.observations().front().date);
    bundle.last_date = format_iso_date(prices.observations().back().date);
    bundle.returns.assign(returns.observations().begin(), returns.observations().end());
    bundle.metadata = build_metadata(config);

    std::vector<std::function<ReportBundle()>> stages{
        [&] { return moments_stage(prices, returns, config); },
        [&] { return dependence_stage(returns, config); },
        [&] { return density_stage(prices, returns, config); },
        [&] { return garch_stage(returns, config); },
    };

    // Results are merged in a fixed order, so threading never changes the output.
    if (config.concurrent) {
        std::vector<std::future<ReportBundle>> futures;
        for (auto& stage : stages) futures.push_back(std::async(std::launch::async, stage));
        for (auto& f : futures) merge(bundle, f.get());
    } else {
        for (auto& stage : stages) merge(bundle, stage());
    }
    return bundle;
}

}  // namespace stylized
