#include "stylized/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "stylized/errors.hpp"

namespace stylized {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

// Series for P(s, x), valid (fast) for x < s + 1.
double gamma_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - ln_gamma(s));
}

// Continued fraction (modified Lentz) for Q(s, x), valid for x >= s + 1.
double gamma_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + s * std::log(x) - ln_gamma(s)) * h;
}

void check_gamma_args(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0)) {
        throw DomainError("incomplete gamma requires s > 0 and x >= 0");
    }
}

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers can keep precision near x = 1.
double inc_beta(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

// Kolmogorov series. Below this cut the theta-function form converges fast.
constexpr double kKolmogorovCut = 1.18;
constexpr double kPi = std::numbers::pi;

double kolmogorov_cdf_small(double x) {
    const double sqrt_2pi = std::sqrt(2.0 * kPi);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double term = std::exp(-odd * odd * kPi * kPi / (8.0 * x * x));
        sum += term;
        if (term < kEps * sum || term == 0.0) break;
    }
    return sqrt_2pi / x * sum;
}

double kolmogorov_survival_large(double x) {
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += sign * term;
        sign = -sign;
        if (term < kEps * std::fabs(sum) || term == 0.0) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_pdf(double x) {
    if (x <= 0.0) return 0.0;
    double sum = 0.0;
    if (x < kKolmogorovCut) {
        for (int k = 1; k < 1000; ++k) {
            const double odd = 2.0 * k - 1.0;
            const double c = odd * odd * kPi * kPi / 8.0;
            const double e = std::exp(-c / (x * x));
            const double term = e * (2.0 * c / (x * x * x * x) - 1.0 / (x * x));
            sum += term;
            if (std::fabs(term) < kEps * std::fabs(sum) || e == 0.0) break;
        }
        return std::sqrt(2.0 * kPi) * sum;
    }
    double sign = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double e = std::exp(-2.0 * k * k * x * x);
        sum += sign * k * k * e;
        sign = -sign;
        if (e < kEps) break;
    }
    return 8.0 * x * sum;
}

// Acklam's rational approximation to the standard normal quantile (relative error < 1.2e-9).
double normal_quantile_seed(double p) {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                             6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                             3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double quantile_seed(const Distribution& d, double p) {
    const double z = normal_quantile_seed(p);
    switch (d.kind()) {
        case Distribution::Kind::normal:
            return d.mean() + d.sd() * z;
        case Distribution::Kind::chi_square: {
            // Wilson-Hilferty
            const double k = d.df();
            const double h = 2.0 / (9.0 * k);
            const double cube = 1.0 - h + z * std::sqrt(h);
            return cube > 0.0 ? k * cube * cube * cube : k * 1e-3;
        }
        case Distribution::Kind::student_t: {
            // Cornish-Fisher terms in 1/df
            const double v = d.df();
            const double z2 = z * z;
            return z + z * (z2 + 1.0) / (4.0 * v) + z * (5.0 * z2 * z2 + 16.0 * z2 + 3.0) / (96.0 * v * v);
        }
        case Distribution::Kind::kolmogorov:
            return 1.0;
    }
    return z;
}

double support_lower(const Distribution& d) {
    switch (d.kind()) {
        case Distribution::Kind::chi_square:
        case Distribution::Kind::kolmogorov:
            return 0.0;
        default:
            return -std::numeric_limits<double>::infinity();
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("ln_gamma requires a positive finite argument");
    }
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum in its accurate range.
        return std::log(kPi / std::sin(kPi * x)) - ln_gamma(1.0 - x);
    }
    // Lanczos approximation, g = 7, n = 9.
    static constexpr std::array<double, 9> coef{0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                                771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                                -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double sum = coef[0];
    for (std::size_t i = 1; i < coef.size(); ++i) sum += coef[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double reg_inc_gamma(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return std::clamp(gamma_series(s, x), 0.0, 1.0);
    return std::clamp(1.0 - gamma_continued_fraction(s, x), 0.0, 1.0);
}

double reg_inc_gamma_upper(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return std::clamp(1.0 - gamma_series(s, x), 0.0, 1.0);
    return std::clamp(gamma_continued_fraction(s, x), 0.0, 1.0);
}

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw DomainError("incomplete beta requires a, b > 0 and 0 <= x <= 1");
    }
    return std::clamp(inc_beta(a, b, x, 1.0 - x), 0.0, 1.0);
}

double erf(double x) { return std::erf(x); }

double erf_inv(double y) {
    if (!(y > -1.0 && y < 1.0)) throw DomainError("erf_inv requires -1 < y < 1");
    if (y == 0.0) return 0.0;
    return quantile(Distribution::normal(), 0.5 * (y + 1.0)) / std::numbers::sqrt2;
}

Distribution Distribution::normal(double mean, double sd) {
    if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
        throw DomainError("normal distribution requires finite mean and sd > 0");
    }
    return {Kind::normal, mean, sd, 0.0};
}

Distribution Distribution::chi_square(double df) {
    if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("chi-square requires df > 0");
    return {Kind::chi_square, 0.0, 1.0, df};
}

Distribution Distribution::student_t(double df) {
    if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("student t requires df > 0");
    return {Kind::student_t, 0.0, 1.0, df};
}

Distribution Distribution::kolmogorov() { return {Kind::kolmogorov, 0.0, 1.0, 0.0}; }

std::string Distribution::describe() const {
    switch (kind_) {
        case Kind::normal: return "normal(" + format_number(a_) + ", " + format_number(b_) + ")";
        case Kind::chi_square: return "chi_square(" + format_number(df_) + ")";
        case Kind::student_t: return "student_t(" + format_number(df_) + ")";
        case Kind::kolmogorov: return "kolmogorov";
    }
    return "unknown";
}

double cdf(const Distribution& d, double x) {
    if (std::isnan(x)) throw DomainError("cdf of NaN");
    switch (d.kind()) {
        case Distribution::Kind::normal:
            return 0.5 * std::erfc(-(x - d.mean()) / (d.sd() * std::numbers::sqrt2));
        case Distribution::Kind::chi_square:
            return x <= 0.0 ? 0.0 : reg_inc_gamma(0.5 * d.df(), 0.5 * x);
        case Distribution::Kind::student_t: {
            if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
            const double v = d.df();
            const double t2 = x * x;
            if (t2 < v) {
                const double half = 0.5 * inc_beta(0.5, 0.5 * v, t2 / (v + t2), v / (v + t2));
                return x >= 0.0 ? 0.5 + half : 0.5 - half;
            }
            const double tail = 0.5 * inc_beta(0.5 * v, 0.5, v / (v + t2), t2 / (v + t2));
            return x > 0.0 ? 1.0 - tail : tail;
        }
        case Distribution::Kind::kolmogorov:
            if (x <= 0.0) return 0.0;
            if (x < kKolmogorovCut) return std::clamp(kolmogorov_cdf_small(x), 0.0, 1.0);
            return 1.0 - kolmogorov_survival_large(x);
    }
    return 0.0;
}

double survival(const Distribution& d, double x) {
    if (std::isnan(x)) throw DomainError("survival of NaN");
    switch (d.kind()) {
        case Distribution::Kind::normal:
            return 0.5 * std::erfc((x - d.mean()) / (d.sd() * std::numbers::sqrt2));
        case Distribution::Kind::chi_square:
            return x <= 0.0 ? 1.0 : reg_inc_gamma_upper(0.5 * d.df(), 0.5 * x);
        case Distribution::Kind::student_t:
            return cdf(d, -x);
        case Distribution::Kind::kolmogorov:
            if (x <= 0.0) return 1.0;
            if (x < kKolmogorovCut) return 1.0 - std::clamp(kolmogorov_cdf_small(x), 0.0, 1.0);
            return kolmogorov_survival_large(x);
    }
    return 1.0;
}

double pdf(const Distribution& d, double x) {
    switch (d.kind()) {
        case Distribution::Kind::normal: {
            const double z = (x - d.mean()) / d.sd();
            return std::exp(-0.5 * z * z) / (d.sd() * std::sqrt(2.0 * kPi));
        }
        case Distribution::Kind::chi_square: {
            if (x < 0.0) return 0.0;
            const double k = 0.5 * d.df();
            if (x == 0.0) {
                if (k < 1.0) return std::numeric_limits<double>::infinity();
                return k == 1.0 ? 0.5 : 0.0;
            }
            return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - ln_gamma(k));
        }
        case Distribution::Kind::student_t: {
            const double v = d.df();
            return std::exp(ln_gamma(0.5 * (v + 1.0)) - ln_gamma(0.5 * v) - 0.5 * std::log(v * kPi) -
                            0.5 * (v + 1.0) * std::log1p(x * x / v));
        }
        case Distribution::Kind::kolmogorov:
            return kolmogorov_pdf(x);
    }
    return 0.0;
}

double quantile(const Distribution& d, double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile requires 0 < p < 1");

    // Increasing in x with its root at the quantile; the upper tail is matched
    // through the survival function so p near 1 keeps full precision.
    const bool upper = p > 0.5;
    const double q = 1.0 - p;
    auto f = [&](double x) { return upper ? q - survival(d, x) : cdf(d, x) - p; };

    const double floor = support_lower(d);
    double x = std::max(quantile_seed(d, p), floor);

    // Bracket the root by geometric expansion around the seed.
    double step = 1e-6 * (1.0 + std::fabs(x));
    double lo = x;
    double hi = x;
    double flo = f(lo);
    if (flo > 0.0) {
        for (int i = 0; i < 2000 && flo > 0.0 && lo > floor; ++i) {
            hi = lo;
            lo = std::max(floor, lo - step);
            step *= 2.0;
            flo = f(lo);
        }
    } else {
        double fhi = flo;
        for (int i = 0; i < 2000 && fhi < 0.0; ++i) {
            lo = hi;
            hi += step;
            step *= 2.0;
            fhi = f(hi);
        }
    }

    // Safeguarded Newton inside the bracket, bisection whenever Newton leaves it.
    x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 500; ++iter) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (fx < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double width = hi - lo;
        if (width <= 1e-15 * std::max(std::fabs(lo), std::fabs(hi)) || width <= kTiny) break;

        const double density = pdf(d, x);
        double next = 0.5 * (lo + hi);
        if (density > 0.0 && std::isfinite(density)) {
            const double newton = x - fx / density;
            if (newton > lo && newton < hi) {
                if (std::fabs(newton - x) <= 1e-15 * std::max(1e-300, std::fabs(x))) return newton;
                next = newton;
            }
        }
        x = next;
    }
    return x;
}

double sample(const Distribution& d, UniformSource& source) { return quantile(d, source.next()); }

std::vector<double> sample(const Distribution& d, std::size_t n, std::uint64_t seed) {
    UniformSource source(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = sample(d, source);
    return out;
}

}  // namespace stylized
