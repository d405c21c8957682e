#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "stylized/errors.hpp"
#include "stylized/special.hpp"

#if STYLIZED_HAVE_BOOST_MATH
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace stylized;

namespace {

bool close_rel(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want));
}

}  // namespace

TEST_CASE("frozen reference values") {
    CHECK(close_rel(quantile(Distribution::normal(), 0.975), 1.959963984540054, 1e-13));
    CHECK(close_rel(quantile(Distribution::student_t(4), 0.975), 2.7764451051977987, 1e-13));
    CHECK(close_rel(quantile(Distribution::chi_square(2), 0.95), 5.991464547107979, 1e-13));
    CHECK(close_rel(cdf(Distribution::student_t(4), 1.5), 0.896, 1e-13));
    CHECK(close_rel(cdf(Distribution::student_t(7.5), -2.2), 0.030599732953058022, 1e-12));
    CHECK(close_rel(cdf(Distribution::chi_square(21), 30.0), 0.9080119927762059, 1e-13));
    CHECK(close_rel(reg_inc_gamma(3.5, 2.0), 0.22022259152428406, 1e-13));
    CHECK(close_rel(reg_inc_beta(2.5, 1.5, 0.3), 0.08894372317066562, 1e-13));
    CHECK(close_rel(ln_gamma(0.3), 1.0957979948180756, 1e-13));
    CHECK(close_rel(ln_gamma(10.5), 13.940625219403763, 1e-13));
    CHECK(close_rel(survival(Distribution::kolmogorov(), 1.0), 0.26999967167735456, 1e-12));
    CHECK(close_rel(survival(Distribution::kolmogorov(), 0.5), 0.9639452436648751, 1e-12));
    CHECK(close_rel(survival(Distribution::kolmogorov(), 1.36), 0.049485876755377876, 1e-12));
    CHECK(std::fabs(cdf(Distribution::kolmogorov(), 0.3) / 9.305801334566636e-06 - 1.0) < 1e-9);
    CHECK(close_rel(erf_inv(0.5), 0.4769362762044699, 1e-13));
    CHECK(close_rel(quantile(Distribution::student_t(3), 0.01), -4.5407028585681336, 1e-13));
    CHECK(std::fabs(quantile(Distribution::chi_square(1), 0.001) / 1.5707971492624921e-06 - 1.0) < 1e-10);
    CHECK(close_rel(survival(Distribution::chi_square(21), 56.4024), 4.4035e-05, 1e-4));
}

TEST_CASE("closed forms and symmetry") {
    CHECK(cdf(Distribution::normal(), 0.0) == 0.5);
    CHECK(cdf(Distribution::student_t(4), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(quantile(Distribution::normal(), 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0));
    CHECK(std::fabs(ln_gamma(5.0) - std::log(24.0)) < 1e-14);
    CHECK(stylized::erf(0.0) == 0.0);
    for (double x : {0.3, 1.0, 2.7}) CHECK(stylized::erf(-x) == -stylized::erf(x));
    for (double x : {0.5, 1.0, 2.0}) CHECK(std::fabs(reg_inc_gamma(1.0, x) - (1.0 - std::exp(-x))) < 1e-15);
    CHECK(reg_inc_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(reg_inc_beta(2.0, 3.0, 1.0) == 1.0);
    double prev = 0.0;
    for (double x = 0.0; x < 30.0; x += 0.1) {
        const double g = reg_inc_gamma(4.5, x);
        CHECK(g >= prev);
        prev = g;
    }
}

TEST_CASE("chi-square with two degrees of freedom is exponential") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = 0.05 * i;
        CHECK(std::fabs(cdf(Distribution::chi_square(2), x) - (1.0 - std::exp(-x / 2))) <= 1e-12);
    }
}

TEST_CASE("quantile inverts cdf") {
    const std::vector<Distribution> family{
        Distribution::normal(), Distribution::normal(1.5, 3.0), Distribution::chi_square(1),
        Distribution::chi_square(2), Distribution::chi_square(21), Distribution::chi_square(26),
        Distribution::student_t(4), Distribution::student_t(1), Distribution::kolmogorov()};
    for (const auto& d : family) {
        for (int i = 1; i <= 1000; ++i) {
            const double p = (i - 0.5) / 1000.0;
            INFO(d.describe() << " p=" << p);
            CHECK(std::fabs(cdf(d, quantile(d, p)) - p) <= 1e-9);
            const double x = quantile(d, 0.0005) + (quantile(d, 0.9995) - quantile(d, 0.0005)) * (i - 0.5) / 1000.0;
            CHECK(std::fabs(quantile(d, cdf(d, x)) - x) <= 1e-8 * std::max(1.0, std::fabs(x)));
        }
    }
}

TEST_CASE("cdf is nondecreasing and survival complements it") {
    for (const auto& d : {Distribution::normal(), Distribution::chi_square(5), Distribution::student_t(3),
                          Distribution::kolmogorov()}) {
        double prev = 0.0;
        for (double x = -10.0; x <= 40.0; x += 0.01) {
            const double c = cdf(d, x);
            CHECK(c >= prev - 1e-15);
            CHECK(std::fabs(c + survival(d, x) - 1.0) <= 1e-14);
            prev = c;
        }
    }
}

TEST_CASE("pdf integrates to the cdf") {
    for (const auto& d : {Distribution::normal(0.3, 2.0), Distribution::chi_square(4), Distribution::student_t(4),
                          Distribution::kolmogorov()}) {
        std::vector<double> xs;
        std::vector<double> ys;
        const double lo = d.kind() == Distribution::Kind::normal || d.kind() == Distribution::Kind::student_t
                              ? -8.0
                              : 0.0;
        for (int i = 0; i <= 80000; ++i) {
            xs.push_back(lo + i * 1e-4);
            ys.push_back(pdf(d, xs.back()));
        }
        const double area = oracle::trapezoid(xs, ys);
        INFO(d.describe());
        CHECK(std::fabs(area - (cdf(d, xs.back()) - cdf(d, lo))) <= 1e-6);
    }
}

TEST_CASE("t approaches the normal for large df") {
    for (double x = -4.0; x <= 4.0; x += 0.25) {
        CHECK(std::fabs(cdf(Distribution::student_t(1000), x) - cdf(Distribution::normal(), x)) < 1e-3);
    }
}

TEST_CASE("quantile bounds and domain errors") {
    CHECK_THROWS_AS((void)quantile(Distribution::normal(), 0.0), DomainError);
    CHECK_THROWS_AS((void)quantile(Distribution::normal(), 1.0), DomainError);
    CHECK_THROWS_AS((void)quantile(Distribution::normal(), 1.5), DomainError);
    CHECK_THROWS_AS((void)quantile(Distribution::normal(), -0.1), DomainError);
    CHECK_THROWS_AS((void)Distribution::chi_square(0.0), DomainError);
    CHECK_THROWS_AS((void)Distribution::student_t(-1.0), DomainError);
    CHECK_THROWS_AS((void)Distribution::normal(0.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS((void)reg_inc_beta(1.0, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS((void)erf_inv(1.0), DomainError);
    CHECK(cdf(Distribution::chi_square(3), -1.0) == 0.0);
}

TEST_CASE("descriptions and equality") {
    CHECK(Distribution::normal().describe() == "normal(0, 1)");
    CHECK(Distribution::student_t(4) == Distribution::student_t(4));
    CHECK_FALSE(Distribution::student_t(4) == Distribution::student_t(5));
}

TEST_CASE("sampling is deterministic and matches moments") {
    const auto a = sample(Distribution::normal(), 20000, 99);
    const auto b = sample(Distribution::normal(), 20000, 99);
    CHECK(a == b);
    CHECK(a != sample(Distribution::normal(), 20000, 100));
    double m = 0.0;
    double v = 0.0;
    for (double x : a) m += x;
    m /= a.size();
    for (double x : a) v += (x - m) * (x - m);
    v /= a.size() - 1;
    CHECK(std::fabs(m) < 0.03);
    CHECK(std::fabs(v - 1.0) < 0.04);

    const auto c = sample(Distribution::chi_square(3), 20000, 5);
    double cm = 0.0;
    for (double x : c) cm += x;
    CHECK(std::fabs(cm / c.size() - 3.0) < 0.08);
}

#if STYLIZED_HAVE_BOOST_MATH
TEST_CASE("agreement with an independent special-function implementation") {
    for (double s : {0.5, 1.0, 2.5, 10.5, 50.0}) {
        for (double x : {0.01, 0.5, 1.0, 3.0, 12.0, 60.0}) {
            CHECK(close_rel(reg_inc_gamma(s, x), boost::math::gamma_p(s, x), 1e-13));
            CHECK(std::fabs(reg_inc_gamma_upper(s, x) / boost::math::gamma_q(s, x) - 1.0) < 1e-11);
        }
    }
    for (double a : {0.5, 2.0, 13.0}) {
        for (double b : {0.5, 1.5, 40.0}) {
            for (double x : {0.01, 0.2, 0.5, 0.9, 0.999}) {
                CHECK(close_rel(reg_inc_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-13));
            }
        }
    }
    for (double x : {0.1, 0.7, 1.0, 3.3, 25.0, 170.5}) {
        CHECK(close_rel(ln_gamma(x), boost::math::lgamma(x), 1e-13));
    }
    for (double df : {1.0, 2.0, 4.0, 21.0, 26.0}) {
        boost::math::chi_squared chi(df);
        boost::math::students_t t(df);
        for (double p : {1e-6, 0.01, 0.3, 0.5, 0.95, 0.999999}) {
            CHECK(close_rel(quantile(Distribution::chi_square(df), p), boost::math::quantile(chi, p), 1e-11));
            CHECK(close_rel(quantile(Distribution::student_t(df), p), boost::math::quantile(t, p), 1e-11));
        }
        CHECK(std::fabs(survival(Distribution::chi_square(df), 200.0) /
                            boost::math::cdf(boost::math::complement(chi, 200.0)) -
                        1.0) < 1e-10);
    }
    boost::math::normal z;
    for (double x : {-30.0, -8.0, -1.0, 0.0, 2.0, 6.0}) {
        CHECK(std::fabs(cdf(Distribution::normal(), x) / boost::math::cdf(z, x) - 1.0) < 1e-12);
    }
}
#endif
