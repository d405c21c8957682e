#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace stylized {

// Special functions. All throw DomainError outside their stated domains.

/// ln Γ(x) for x > 0.
[[nodiscard]] double ln_gamma(double x);

/// Regularized lower incomplete gamma P(s, x), s > 0, x >= 0.
[[nodiscard]] double reg_inc_gamma(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), without cancellation.
[[nodiscard]] double reg_inc_gamma_upper(double s, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
[[nodiscard]] double reg_inc_beta(double a, double b, double x);

[[nodiscard]] double erf(double x);

/// Inverse of erf on (-1, 1).
[[nodiscard]] double erf_inv(double y);

/// Reference distributions used by the hypothesis tests and QQ plots.
class Distribution {
public:
    enum class Kind { normal, chi_square, student_t, kolmogorov };

    [[nodiscard]] static Distribution normal(double mean = 0.0, double sd = 1.0);
    [[nodiscard]] static Distribution chi_square(double df);
    [[nodiscard]] static Distribution student_t(double df);
    /// Limiting distribution of sqrt(n) * D_n for the one-sample KS statistic.
    [[nodiscard]] static Distribution kolmogorov();

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    /// Location (normal only; 0 otherwise).
    [[nodiscard]] double mean() const noexcept { return a_; }
    /// Scale (normal only; 1 otherwise).
    [[nodiscard]] double sd() const noexcept { return b_; }
    /// Degrees of freedom (chi-square and Student-t; 0 otherwise).
    [[nodiscard]] double df() const noexcept { return df_; }

    /// e.g. "normal(0, 1)", "student_t(4)".
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    Distribution(Kind kind, double a, double b, double df) : kind_(kind), a_(a), b_(b), df_(df) {}

    Kind kind_;
    double a_;
    double b_;
    double df_;
};

[[nodiscard]] double cdf(const Distribution& d, double x);

/// 1 - cdf(d, x), evaluated directly in the upper tail.
[[nodiscard]] double survival(const Distribution& d, double x);

[[nodiscard]] double pdf(const Distribution& d, double x);

/// Inverse CDF for 0 < p < 1, polished until cdf(d, result) matches p.
[[nodiscard]] double quantile(const Distribution& d, double p);

/// Seeded source of uniform deviates on the open interval (0, 1).
/// The sequence depends only on the seed (mt19937_64 is fully specified).
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double next() {
        // 53 random bits, offset by half an ulp so 0 and 1 are never produced.
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// One inverse-CDF deviate from `d`.
[[nodiscard]] double sample(const Distribution& d, UniformSource& source);

/// `n` inverse-CDF deviates from `d`, deterministic per seed.
[[nodiscard]] std::vector<double> sample(const Distribution& d, std::size_t n, std::uint64_t seed);

}  // namespace stylized
