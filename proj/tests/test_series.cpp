#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stylized/errors.hpp"
#include "stylized/series.hpp"

using namespace stylized;

namespace {

PriceSeries daily(std::vector<double> prices, const char* first = "2021-03-01") {
    const auto dates = weekday_calendar(parse_iso_date(first), prices.size());
    std::vector<PricePoint> obs;
    for (std::size_t i = 0; i < prices.size(); ++i) obs.push_back({dates[i], prices[i]});
    return PriceSeries("test", std::move(obs));
}

PriceSeries calendar_days(const char* first, std::size_t count, double price = 10.0) {
    std::vector<PricePoint> obs;
    Date d = parse_iso_date(first);
    for (std::size_t i = 0; i < count; ++i) obs.push_back({d + std::chrono::days{static_cast<int>(i)}, price});
    return PriceSeries("test", std::move(obs));
}

}  // namespace

TEST_CASE("iso dates parse and format") {
    CHECK(format_iso_date(parse_iso_date("2011-12-30")) == "2011-12-30");
    CHECK(format_iso_date(parse_iso_date("2000-02-29")) == "2000-02-29");
    CHECK_THROWS_AS((void)parse_iso_date("2011-02-30"), DomainError);
    CHECK_THROWS_AS((void)parse_iso_date("2011/12/30"), DomainError);
    CHECK_THROWS_AS((void)parse_iso_date("20111230"), DomainError);
}

TEST_CASE("price series invariants") {
    CHECK_THROWS_AS(daily({100.0, 0.0}), DomainError);
    CHECK_THROWS_AS(daily({100.0, -1.0}), DomainError);
    const Date d = parse_iso_date("2020-01-02");
    CHECK_THROWS_AS(PriceSeries("x", {{d, 1.0}, {d, 2.0}}), DomainError);
    CHECK_THROWS_AS(PriceSeries("x", {{d, 1.0}, {d - std::chrono::days{1}, 2.0}}), DomainError);
}

TEST_CASE("simple returns") {
    auto r = simple_returns(daily({100.0, 110.0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].ret == doctest::Approx(0.10).epsilon(1e-15));

    r = simple_returns(daily({100.0, 100.0, 100.0}));
    CHECK(r.size() == 2);
    CHECK(r[0].ret == 0.0);
    CHECK(r[1].ret == 0.0);

    r = simple_returns(daily({50.0, 40.0}));
    CHECK(r[0].ret == doctest::Approx(-0.20).epsilon(1e-15));

    CHECK_THROWS_AS((void)simple_returns(daily({100.0})), InsufficientDataError);
}

TEST_CASE("log returns") {
    const auto p = daily({100.0, 110.0});
    const auto r = log_returns(p);
    REQUIRE(r.size() == 1);
    CHECK(r.values()[0] == doctest::Approx(9.531017980432493).epsilon(1e-14));
    CHECK(r.observations()[0].date == p.observations()[1].date);  // dated at the later endpoint

    CHECK(log_returns(daily({100.0, 100.0})).values()[0] == 0.0);
    for (double x : {0.37, 1.0, 2500.0}) {
        CHECK(log_returns(daily({std::exp(1.0) * x, x})).values()[0] == doctest::Approx(-100.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS((void)log_returns(daily({100.0})), InsufficientDataError);
}

TEST_CASE("simple and log returns agree to first order") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    std::vector<double> prices{100.0};
    for (int i = 0; i < 500; ++i) prices.push_back(prices.back() * (1.0 + u(gen)));
    const auto p = daily(prices);
    const auto simple = simple_returns(p);
    const auto logs = log_returns(p).values();
    for (std::size_t t = 0; t < simple.size(); ++t) {
        const double R = simple[t].ret;
        CHECK(std::fabs(100.0 * R - logs[t]) <= 100.0 * R * R + 1e-12);
    }
}

TEST_CASE("round trip through integrate_returns") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> z(0.0, 1.5);
    std::vector<double> prices{250.0};
    for (int i = 0; i < 3000; ++i) prices.push_back(prices.back() * std::exp(z(gen) / 100.0));
    const auto p = daily(prices);
    const auto r = log_returns(p);
    CHECK(r.size() == p.size() - 1);

    double log_price = std::log(prices.front());
    for (double v : r.values()) log_price += v / 100.0;
    CHECK(std::fabs(std::exp(log_price) / prices.back() - 1.0) <= 1e-9);

    const auto back = integrate_returns(r, prices.front());
    REQUIRE(back.size() == p.size());
    CHECK(std::fabs(back.observations().back().price / prices.back() - 1.0) <= 1e-9);
}

TEST_CASE("period keys") {
    // 2021-01-03 is a Sunday (ISO week 53 of 2020), 2021-01-04 a Monday.
    CHECK(period_key(parse_iso_date("2021-01-03"), TimeScale::weekly) ==
          period_key(parse_iso_date("2020-12-28"), TimeScale::weekly));
    CHECK(period_key(parse_iso_date("2021-01-03"), TimeScale::weekly) !=
          period_key(parse_iso_date("2021-01-04"), TimeScale::weekly));
    CHECK(period_key(parse_iso_date("2021-03-31"), TimeScale::quarterly) ==
          period_key(parse_iso_date("2021-01-01"), TimeScale::quarterly));
    CHECK(period_key(parse_iso_date("2021-04-01"), TimeScale::quarterly) >
          period_key(parse_iso_date("2021-03-31"), TimeScale::quarterly));
    CHECK(period_key(parse_iso_date("2021-02-01"), TimeScale::monthly) ==
          period_key(parse_iso_date("2021-02-28"), TimeScale::monthly));
}

TEST_CASE("resample") {
    SUBCASE("single ISO week collapses to its last close") {
        // Monday 2021-03-01 through Sunday 2021-03-07, with distinct prices.
        std::vector<PricePoint> obs;
        for (int i = 0; i < 7; ++i) {
            obs.push_back({parse_iso_date("2021-03-01") + std::chrono::days{i}, 100.0 + i});
        }
        const auto w = resample(PriceSeries("x", obs), TimeScale::weekly);
        REQUIRE(w.size() == 1);
        CHECK(w.observations()[0].price == 106.0);
        CHECK(format_iso_date(w.observations()[0].date) == "2021-03-07");
    }
    SUBCASE("two calendar months") {
        const auto p = calendar_days("2021-02-01", 28 + 31);
        const auto m = resample(p, TimeScale::monthly);
        REQUIRE(m.size() == 2);
        CHECK(format_iso_date(m.observations()[0].date) == "2021-02-28");
        CHECK(format_iso_date(m.observations()[1].date) == "2021-03-31");
    }
    SUBCASE("constant prices resampled give zero returns") {
        const auto p = calendar_days("2020-01-01", 400, 42.0);
        for (auto scale : {TimeScale::weekly, TimeScale::monthly, TimeScale::quarterly}) {
            const auto r = log_returns(resample(p, scale));
            for (double v : r.values()) CHECK(v == 0.0);
        }
    }
    SUBCASE("identity at input cadence, error when finer") {
        const auto p = calendar_days("2020-01-01", 50);
        CHECK(resample(p, TimeScale::daily).size() == p.size());
        const auto m = resample(p, TimeScale::monthly);
        CHECK_THROWS_AS((void)resample(m, TimeScale::weekly), DomainError);
        CHECK(resample(m, TimeScale::monthly).size() == m.size());
        CHECK(log_returns(m).scale() == TimeScale::monthly);
    }
}

TEST_CASE("resampled log returns equal summed daily returns") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> z(0.0, 1.2);
    std::vector<double> prices{1000.0};
    for (int i = 0; i < 1500; ++i) prices.push_back(prices.back() * std::exp(z(gen) / 100.0));
    const auto p = daily(prices, "2001-01-01");
    const auto d = log_returns(p);

    for (auto scale : {TimeScale::weekly, TimeScale::monthly, TimeScale::quarterly}) {
        const auto coarse = resample(p, scale);
        const auto coarse_r = log_returns(coarse);
        const auto cobs = coarse.observations();
        for (std::size_t i = 0; i < coarse_r.size(); ++i) {
            double sum = 0.0;
            for (const auto& o : d.observations()) {
                if (cobs[i].date < o.date && !(cobs[i + 1].date < o.date)) sum += o.ret;
            }
            const double got = coarse_r.values()[i];
            CHECK(std::fabs(got - sum) <= 1e-9 * std::max(1.0, std::fabs(sum)));
        }
    }
}

TEST_CASE("return series helpers") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto r = ReturnSeries::from_values(v);
    CHECK(r.size() == 4);
    CHECK(format_iso_date(r.observations()[0].date) == "2000-01-03");
    CHECK(format_iso_date(r.observations()[3].date) == "2000-01-06");
    CHECK(r.tail(2).values() == std::vector<double>{3.0, 4.0});
    CHECK(r.tail(10).size() == 4);
    CHECK(parse_time_scale("quarterly") == TimeScale::quarterly);
    CHECK_THROWS_AS((void)parse_time_scale("hourly"), DomainError);
}
