#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "stylized/density.hpp"
#include "stylized/errors.hpp"

using namespace stylized;

namespace {

double bar_area(const DensityCurve& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.empirical.size(); ++i) s += c.empirical[i] * (c.bin_edges[i + 1] - c.bin_edges[i]);
    return s;
}

double sample_sd(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= x.size();
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / (x.size() - 1.0));
}

}  // namespace

TEST_CASE("histogram of uniform data") {
    // A bin height is count / (n * 0.1); its binomial standard deviation is sqrt(0.9 / (0.1 * n)).
    SUBCASE("n = 1000 within five standard deviations") {
        const auto h = histogram(oracle::std_uniforms(1000, 42), 10);
        REQUIRE(h.empirical.size() == 10);
        REQUIRE(h.bin_edges.size() == 11);
        for (double height : h.empirical) CHECK(std::fabs(height - 1.0) <= 5.0 * std::sqrt(0.9 / 100.0));
        CHECK(std::fabs(bar_area(h) - 1.0) <= 1e-12);
    }
    SUBCASE("n = 20000 within 0.15") {
        const auto h = histogram(oracle::std_uniforms(20000, 42), 10);
        for (double height : h.empirical) CHECK(std::fabs(height - 1.0) <= 0.15);
    }
}

TEST_CASE("histogram normalization and reference") {
    const auto x = oracle::std_student_t(5000, 4.0, 3);
    for (std::size_t bins : {1u, 7u, 40u, 333u}) {
        const auto h = histogram(x, bins);
        CHECK(std::fabs(bar_area(h) - 1.0) <= 1e-12);
        for (std::size_t i = 1; i < h.grid.size(); ++i) CHECK(h.grid[i] > h.grid[i - 1]);
    }
    const auto one = histogram(x, 1);
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    CHECK(one.empirical[0] == doctest::Approx(1.0 / (*mx - *mn)).epsilon(1e-14));

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    const auto h = histogram(x, 12);
    const auto ref = Distribution::normal(mean, sample_sd(x));
    for (std::size_t i = 0; i < h.grid.size(); ++i) {
        CHECK(h.reference[i] == doctest::Approx(pdf(ref, h.grid[i])).epsilon(1e-12));
    }
}

TEST_CASE("histogram of mirrored data is mirrored") {
    const auto x = oracle::std_normals(999, 8);
    std::vector<double> y;
    for (double v : x) y.push_back(-v);
    const auto a = histogram(x, 15);
    const auto b = histogram(y, 15);
    for (std::size_t i = 0; i < 15; ++i) {
        // Observations sitting exactly on an interior edge may switch sides.
        CHECK(std::fabs(a.empirical[i] - b.empirical[14 - i]) <= 1.0 / (999.0 * (a.bin_edges[1] - a.bin_edges[0])) + 1e-12);
        CHECK(a.grid[i] == doctest::Approx(-b.grid[14 - i]).epsilon(1e-12));
    }
}

TEST_CASE("histogram errors") {
    const std::vector<double> flat(5, 1.0);
    CHECK_THROWS_AS((void)histogram(flat, 4), DegenerateSeriesError);
    const auto x = oracle::std_normals(10, 1);
    CHECK_THROWS_AS((void)histogram(x, 0), DomainError);
}

TEST_CASE("kernel density estimate") {
    SUBCASE("kernel height at its own observation") {
        // Two points far apart: at each observation the other kernel contributes nothing.
        const auto c = kde(std::vector<double>{0.0, 100.0}, 1061, 1.0);
        CHECK(c.grid[30] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(2.0 * c.empirical[30] == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
        CHECK(2.0 * c.empirical[30] == doctest::Approx(0.398942).epsilon(1e-6));

        const auto five = kde(std::vector<double>{-1.0, 1.0}, 5, 1.0);
        const double want = (std::exp(-4.5) + std::exp(-12.5)) / (2.0 * std::sqrt(2.0 * std::numbers::pi));
        CHECK(five.grid[0] == doctest::Approx(-4.0));
        CHECK(five.empirical[0] == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("integrates to one") {
        const auto x = oracle::std_student_t(3000, 4.0, 19);
        const auto c = kde(x, 512);
        CHECK(std::fabs(oracle::trapezoid(c.grid, c.empirical) - 1.0) <= 0.01);
        CHECK(c.grid.front() == doctest::Approx(*std::min_element(x.begin(), x.end()) - 3.0 * c.bandwidth));
        CHECK(c.grid.back() == doctest::Approx(*std::max_element(x.begin(), x.end()) + 3.0 * c.bandwidth));
    }
    SUBCASE("standard normal density at zero") {
        const auto x = oracle::std_normals(10000, 5);
        const auto c = kde(x, 1024);
        std::size_t k = 0;
        for (std::size_t i = 1; i < c.grid.size(); ++i) {
            if (std::fabs(c.grid[i]) < std::fabs(c.grid[k])) k = i;
        }
        CHECK(c.empirical[k] > 0.37);
        CHECK(c.empirical[k] < 0.43);
    }
    SUBCASE("translation equivariance") {
        const auto x = oracle::std_normals(800, 6);
        std::vector<double> y;
        for (double v : x) y.push_back(v + 2.5);
        const auto a = kde(x, 256);
        const auto b = kde(y, 256, a.bandwidth);
        for (std::size_t i = 0; i < a.grid.size(); ++i) {
            CHECK(std::fabs(b.grid[i] - (a.grid[i] + 2.5)) <= 1e-12);
            CHECK(std::fabs(b.empirical[i] - a.empirical[i]) <= 1e-12);
        }
    }
    SUBCASE("Silverman bandwidth") {
        const auto x = oracle::std_normals(2000, 9);
        std::vector<double> s = x;
        std::sort(s.begin(), s.end());
        auto q = [&](double p) {
            const double h = (s.size() - 1) * p;
            const auto lo = static_cast<std::size_t>(h);
            return s[lo] + (h - lo) * (s[lo + 1] - s[lo]);
        };
        const double want = 0.9 * std::min(sample_sd(x), (q(0.75) - q(0.25)) / 1.34) * std::pow(2000.0, -0.2);
        CHECK(silverman_bandwidth(x) == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("Student-t reference is scaled to unit variance") {
        const auto x = oracle::std_normals(500, 2);
        const auto c = kde(x, 64, std::nullopt, ReferenceFamily::student_t(4));
        std::vector<double> xs;
        std::vector<double> ys;
        for (int i = -4000; i <= 4000; ++i) {
            xs.push_back(i * 0.01);
            ys.push_back(xs.back() * xs.back() * ReferenceFamily::student_t(4).fitted_pdf(xs.back(), 0.0, 1.0));
        }
        CHECK(oracle::trapezoid(xs, ys) == doctest::Approx(1.0).epsilon(0.01));
        CHECK_THROWS_AS((void)kde(x, 64, std::nullopt, ReferenceFamily::student_t(2)), DomainError);
    }
    SUBCASE("errors") {
        const std::vector<double> flat(20, 3.0);
        CHECK_THROWS_AS((void)kde(flat, 64), DegenerateSeriesError);
        const auto x = oracle::std_normals(20, 3);
        CHECK_THROWS_AS((void)kde(x, 64, -1.0), DomainError);
    }
}

TEST_CASE("QQ points") {
    const auto z = Distribution::normal();
    SUBCASE("exact quantiles lie on the identity line") {
        std::vector<double> x;
        for (int i = 1; i <= 200; ++i) x.push_back(quantile(z, (i - 0.5) / 200.0));
        std::reverse(x.begin(), x.end());
        const auto qq = qq_points(x, z);
        for (const auto& p : qq.points) CHECK(std::fabs(p.sample - p.theoretical) <= 1e-9);
        CHECK_FALSE(qq.standardized);
    }
    SUBCASE("coordinates are nondecreasing") {
        const auto qq = qq_points(oracle::std_student_t(1000, 3.0, 4), Distribution::student_t(4));
        for (std::size_t i = 1; i < qq.points.size(); ++i) {
            CHECK(qq.points[i].theoretical >= qq.points[i - 1].theoretical);
            CHECK(qq.points[i].sample >= qq.points[i - 1].sample);
        }
        CHECK(qq.standardized);
    }
    SUBCASE("affine equivariance against the fitted normal") {
        const auto x = oracle::std_student_t(600, 5.0, 10);
        auto fit = [](const std::vector<double>& v) {
            double m = 0.0;
            for (double e : v) m += e;
            m /= v.size();
            return Distribution::normal(m, sample_sd(v));
        };
        std::vector<double> y;
        for (double v : x) y.push_back(2.5 * v - 1.0);
        const auto a = qq_points(x, fit(x));
        const auto b = qq_points(y, fit(y));
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(std::fabs(b.points[i].theoretical - (2.5 * a.points[i].theoretical - 1.0)) <= 1e-9);
            CHECK(std::fabs(b.points[i].sample - (2.5 * a.points[i].sample - 1.0)) <= 1e-9);
        }
    }
    SUBCASE("t(4) sample against a t(4) reference") {
        const auto x = oracle::std_student_t(10000, 4.0, 77);
        const auto qq = qq_points(x, Distribution::student_t(4));
        double worst = 0.0;
        for (std::size_t i = 100; i < 9900; ++i) {
            worst = std::max(worst, std::fabs(qq.points[i].sample - qq.points[i].theoretical));
        }
        CHECK(worst < 0.25);
    }
    SUBCASE("t reference needs finite variance") {
        const auto x = oracle::std_normals(100, 1);
        CHECK_THROWS_AS((void)qq_points(x, Distribution::student_t(2)), DomainError);
        CHECK_THROWS_AS((void)qq_points(x, Distribution::student_t(1.5)), DomainError);
    }
}
