#pragma once

// Independent reference computations used only by the tests. Nothing here calls
// into the library code paths being checked.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Textbook double loop over the raw (untransformed) definition of rho_k.
inline std::vector<double> naive_acf(const std::vector<double>& x, std::size_t max_lag) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double denom = 0.0;
    for (std::size_t t = 0; t < n; ++t) denom += (x[t] - mean) * (x[t] - mean);
    std::vector<double> rho;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = k; t < n; ++t) num += (x[t] - mean) * (x[t - k] - mean);
        rho.push_back(num / denom);
    }
    return rho;
}

/// Trapezoid rule on a possibly non-uniform grid.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

/// Fourth-order central difference f'(x) ~ [-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)] / 12h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Bisection for an increasing function's root on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double target) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Standard normal deviates from the standard library (a different generator path
/// than the library's inverse-CDF sampler).
inline std::vector<double> std_normals(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(gen);
    return out;
}

inline std::vector<double> std_uniforms(std::size_t n, unsigned seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(gen);
    return out;
}

inline std::vector<double> std_student_t(std::size_t n, double df, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::student_t_distribution<double> dist(df);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(gen);
    return out;
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace oracle
