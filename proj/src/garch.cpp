#include "stylized/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "stylized/errors.hpp"
#include "stylized/nelder_mead.hpp"
#include "stylized/special.hpp"

namespace stylized {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double mean_square(std::span<const double> eps) {
    double s = 0.0;
    for (double e : eps) s += e * e;
    return s / static_cast<double>(eps.size());
}

bool is_valid(const GarchParams& p) {
    return std::isfinite(p.omega) && p.omega > 0.0 && p.alpha >= 0.0 && p.beta >= 0.0 && p.alpha + p.beta < 1.0;
}

// Likelihood without materializing the variance path.
double loglik_value(std::span<const double> eps, const GarchParams& p, double initial_variance) {
    double sigma2 = initial_variance;
    double sum = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        if (t > 0) sigma2 = p.omega + p.alpha * eps[t - 1] * eps[t - 1] + p.beta * sigma2;
        sum += std::log(sigma2) + eps[t] * eps[t] / sigma2;
    }
    return -0.5 * (static_cast<double>(eps.size()) * kLog2Pi + sum);
}

// Unconstrained coordinates (a, u, v) <-> (omega, alpha, beta).
GarchParams from_unconstrained(std::span<const double> x) {
    const double m = std::max({0.0, x[1], x[2]});
    const double e0 = std::exp(-m);
    const double eu = std::exp(x[1] - m);
    const double ev = std::exp(x[2] - m);
    const double denom = e0 + eu + ev;
    return {std::exp(x[0]), eu / denom, ev / denom};
}

std::array<double, 3> to_unconstrained(const GarchParams& p) {
    const double rest = 1.0 - p.alpha - p.beta;
    return {std::log(p.omega), std::log(p.alpha / rest), std::log(p.beta / rest)};
}

}  // namespace

void GarchParams::validate() const {
    if (!(std::isfinite(omega) && omega > 0.0)) throw DomainError("GARCH omega must be positive");
    if (!(alpha >= 0.0)) throw DomainError("GARCH alpha must be nonnegative");
    if (!(beta >= 0.0)) throw DomainError("GARCH beta must be nonnegative");
    if (!(alpha + beta < 1.0)) throw DomainError("GARCH alpha + beta must be below 1 (covariance stationarity)");
}

GarchLikelihood garch_loglik(std::span<const double> eps, const GarchParams& params,
                             std::optional<double> initial_variance) {
    params.validate();
    if (eps.size() < 2) throw InsufficientDataError("GARCH likelihood needs at least 2 observations");
    const double s0 = initial_variance ? *initial_variance : mean_square(eps);
    if (!(s0 > 0.0)) throw DegenerateSeriesError("GARCH recursion needs a positive initial variance");

    GarchLikelihood out;
    out.cond_variance.resize(eps.size());
    double sigma2 = s0;
    double sum = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        if (t > 0) sigma2 = params.omega + params.alpha * eps[t - 1] * eps[t - 1] + params.beta * sigma2;
        out.cond_variance[t] = sigma2;
        sum += std::log(sigma2) + eps[t] * eps[t] / sigma2;
    }
    out.log_likelihood = -0.5 * (static_cast<double>(eps.size()) * kLog2Pi + sum);
    return out;
}

std::array<double, 3> garch_loglik_gradient(std::span<const double> eps, const GarchParams& params) {
    params.validate();
    if (eps.size() < 2) throw InsufficientDataError("GARCH likelihood needs at least 2 observations");
    double sigma2 = mean_square(eps);
    std::array<double, 3> dsigma2{0.0, 0.0, 0.0};
    std::array<double, 3> grad{0.0, 0.0, 0.0};
    for (std::size_t t = 0; t < eps.size(); ++t) {
        if (t > 0) {
            const double e2 = eps[t - 1] * eps[t - 1];
            dsigma2 = {1.0 + params.beta * dsigma2[0], e2 + params.beta * dsigma2[1],
                       sigma2 + params.beta * dsigma2[2]};
            sigma2 = params.omega + params.alpha * e2 + params.beta * sigma2;
        }
        const double w = -0.5 * (1.0 / sigma2 - eps[t] * eps[t] / (sigma2 * sigma2));
        for (std::size_t i = 0; i < 3; ++i) grad[i] += w * dsigma2[i];
    }
    return grad;
}

std::vector<GarchParams> garch_start_points(double variance) {
    static constexpr std::array<std::array<double, 2>, 5> kAlphaBeta{
        {{0.05, 0.90}, {0.10, 0.80}, {0.15, 0.60}, {0.05, 0.50}, {0.02, 0.10}}};
    std::vector<GarchParams> starts;
    for (const auto& [alpha, beta] : kAlphaBeta) {
        starts.push_back({variance * (1.0 - alpha - beta), alpha, beta});
    }
    return starts;
}

GarchFit garch_fit(std::span<const double> returns, const GarchFitOptions& options) {
    const std::size_t n = returns.size();
    if (n < kGarchMinimumSample) {
        throw InsufficientDataError("GARCH fit needs at least " + std::to_string(kGarchMinimumSample) +
                                    " observations (got " + std::to_string(n) + ")");
    }
    if (std::all_of(returns.begin(), returns.end(), [&](double r) { return r == returns.front(); })) {
        throw DegenerateSeriesError("GARCH fit of a constant series is undefined");
    }
    const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) / static_cast<double>(n);
    std::vector<double> eps(returns.begin(), returns.end());
    for (auto& e : eps) e -= mean;
    const double s0 = mean_square(eps);
    if (!(s0 > 0.0)) throw DegenerateSeriesError("GARCH fit of a constant series is undefined");

    const double scale = 1.0 / static_cast<double>(n);
    auto objective = [&](std::span<const double> x) {
        const auto p = from_unconstrained(x);
        if (!is_valid(p)) return std::numeric_limits<double>::infinity();
        return -loglik_value(eps, p, s0) * scale;
    };

    NelderMeadOptions nm;
    nm.tolerance = options.tolerance;
    nm.max_iterations = options.max_iterations;
    const std::array<double, 3> step{0.5, 0.5, 0.5};

    GarchFit fit;
    fit.mean_subtracted = mean;
    fit.n = n;
    fit.low_sample_warning = n < kGarchRecommendedSample;

    std::optional<std::size_t> best;
    for (const auto& initial : garch_start_points(s0)) {
        GarchStart start;
        start.initial = initial;
        start.initial_log_likelihood = loglik_value(eps, initial, s0);
        const auto x0 = to_unconstrained(initial);
        const auto result = nelder_mead(objective, x0, step, nm);
        start.estimate = from_unconstrained(result.x);
        start.iterations = result.iterations;
        start.converged = result.converged;
        start.finite = std::isfinite(result.value) && is_valid(start.estimate);
        start.log_likelihood = start.finite ? loglik_value(eps, start.estimate, s0)
                                            : -std::numeric_limits<double>::infinity();
        fit.starts.push_back(start);
        if (start.finite && (!best || start.log_likelihood > fit.starts[*best].log_likelihood)) {
            best = fit.starts.size() - 1;
        }
    }
    if (!best) {
        throw EstimationError("GARCH estimation failed: no optimizer start reached a finite likelihood");
    }

    const auto& chosen = fit.starts[*best];
    fit.params = chosen.estimate;
    fit.iterations = chosen.iterations;
    fit.converged = chosen.converged;
    auto path = garch_loglik(eps, fit.params, s0);
    fit.log_likelihood = path.log_likelihood;
    fit.cond_variance = std::move(path.cond_variance);
    return fit;
}

GarchFit garch_fit(const ReturnSeries& returns, const GarchFitOptions& options) {
    return garch_fit(returns.values(), options);
}

std::string Innovation::describe() const {
    if (kind == Kind::student_t) return Distribution::student_t(df).describe() + " scaled to unit variance";
    return "normal(0, 1)";
}

ReturnSeries garch_simulate(const GarchParams& params, std::size_t n, std::uint64_t seed, Innovation innovation) {
    params.validate();
    if (n < 1) throw DomainError("simulation length must be at least 1");
    double z_scale = 1.0;
    auto dist = Distribution::normal();
    if (innovation.kind == Innovation::Kind::student_t) {
        if (!(innovation.df > 2.0)) throw DomainError("Student-t innovations need df > 2 for unit variance");
        dist = Distribution::student_t(innovation.df);
        z_scale = std::sqrt((innovation.df - 2.0) / innovation.df);
    }

    UniformSource source(seed);
    std::vector<double> values(n);
    double sigma2 = params.unconditional_variance();
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) sigma2 = params.omega + params.alpha * values[t - 1] * values[t - 1] + params.beta * sigma2;
        values[t] = std::sqrt(sigma2) * z_scale * sample(dist, source);
    }
    return ReturnSeries::from_values(values, "garch_simulation");
}

std::vector<BandPoint> volatility_bands(const ReturnSeries& returns, const GarchFit& fit, double k) {
    if (returns.size() != fit.cond_variance.size()) {
        throw DomainError("volatility bands need the fit produced from the same return series");
    }
    const double s = std::sqrt(fit.params.unconditional_variance());
    const auto obs = returns.observations();
    std::vector<BandPoint> out;
    out.reserve(obs.size());
    for (std::size_t t = 0; t < obs.size(); ++t) {
        const double band = k * std::sqrt(fit.cond_variance[t]) / s;
        out.push_back({obs[t].date, (obs[t].ret - fit.mean_subtracted) / s, band, -band});
    }
    return out;
}

}  // namespace stylized
