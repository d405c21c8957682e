#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "stylized/density.hpp"
#include "stylized/dependence.hpp"
#include "stylized/emit.hpp"
#include "stylized/errors.hpp"
#include "stylized/garch.hpp"
#include "stylized/ingest.hpp"
#include "stylized/moments.hpp"
#include "stylized/report.hpp"
#include "stylized/report_json.hpp"
#include "stylized/special.hpp"

namespace py = pybind11;
using namespace stylized;

namespace {

ReturnSeries as_returns(const std::vector<double>& values) { return ReturnSeries::from_values(values); }

PriceSeries as_prices(const std::vector<std::string>& dates, const std::vector<double>& prices,
                      const std::string& instrument_id) {
    if (dates.size() != prices.size()) throw DomainError("dates and prices must have the same length");
    std::vector<PricePoint> obs;
    obs.reserve(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) obs.push_back({parse_iso_date(dates[i]), prices[i]});
    return PriceSeries(instrument_id, std::move(obs));
}

Distribution make_distribution(const std::string& name, double a, double b) {
    if (name == "normal") return Distribution::normal(a, b);
    if (name == "chi_square" || name == "chi2") return Distribution::chi_square(a);
    if (name == "student_t" || name == "t") return Distribution::student_t(a);
    if (name == "kolmogorov") return Distribution::kolmogorov();
    throw DomainError("unknown distribution '" + name + "'");
}

std::vector<TimeScale> parse_scales(const std::vector<std::string>& names) {
    std::vector<TimeScale> out;
    for (const auto& n : names) out.push_back(parse_time_scale(n));
    return out;
}

py::dict curve_dict(const DensityCurve& c) {
    py::dict d;
    d["kind"] = c.kind == DensityKind::kde ? "kde" : "histogram";
    d["grid"] = c.grid;
    d["empirical"] = c.empirical;
    d["reference"] = c.reference;
    d["bin_edges"] = c.bin_edges;
    d["bandwidth"] = c.bandwidth;
    d["reference_label"] = c.reference_label;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stylized facts of financial returns: moments, normality, dependence, density and GARCH(1,1).";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<DegenerateSeriesError>(m, "DegenerateSeriesError", base.ptr());
    py::register_exception<EstimationError>(m, "EstimationError", base.ptr());
    py::register_exception<IngestError>(m, "IngestError", base.ptr());

    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    py::class_<SummaryStats>(m, "SummaryStats")
        .def_readonly("n", &SummaryStats::n)
        .def_readonly("mean", &SummaryStats::mean)
        .def_readonly("median", &SummaryStats::median)
        .def_readonly("min", &SummaryStats::min)
        .def_readonly("max", &SummaryStats::max)
        .def_readonly("std_dev", &SummaryStats::std_dev)
        .def_readonly("skewness", &SummaryStats::skewness)
        .def_readonly("kurtosis", &SummaryStats::kurtosis)
        .def_readonly("degenerate", &SummaryStats::degenerate)
        .def("__repr__", [](const SummaryStats& s) { return "SummaryStats(" + to_json_value(s).dump() + ")"; });

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("test_name", &TestResult::test_name)
        .def_readonly("statistic", &TestResult::statistic)
        .def_readonly("df", &TestResult::df)
        .def_readonly("p_value", &TestResult::p_value)
        .def_readonly("null_hypothesis", &TestResult::null_hypothesis)
        .def_readonly("null_distribution", &TestResult::null_distribution)
        .def_readonly("sample_size", &TestResult::sample_size)
        .def("__repr__", [](const TestResult& t) { return "TestResult(" + to_json_value(t).dump() + ")"; });

    py::class_<AcfResult>(m, "AcfResult")
        .def_readonly("rho", &AcfResult::rho)
        .def_readonly("band_halfwidth", &AcfResult::band_halfwidth)
        .def_readonly("n", &AcfResult::n)
        .def_property_readonly("transform", [](const AcfResult& a) { return std::string(to_string(a.transform)); });

    py::class_<GarchParams>(m, "GarchParams")
        .def(py::init([](double omega, double alpha, double beta) { return GarchParams{omega, alpha, beta}; }),
             py::arg("omega"), py::arg("alpha"), py::arg("beta"))
        .def_readwrite("omega", &GarchParams::omega)
        .def_readwrite("alpha", &GarchParams::alpha)
        .def_readwrite("beta", &GarchParams::beta)
        .def("persistence", &GarchParams::persistence)
        .def("unconditional_variance", &GarchParams::unconditional_variance)
        .def("__repr__", [](const GarchParams& p) {
            return "GarchParams(omega=" + std::to_string(p.omega) + ", alpha=" + std::to_string(p.alpha) +
                   ", beta=" + std::to_string(p.beta) + ")";
        });

    py::class_<GarchFit>(m, "GarchFit")
        .def_readonly("params", &GarchFit::params)
        .def_readonly("log_likelihood", &GarchFit::log_likelihood)
        .def_readonly("cond_variance", &GarchFit::cond_variance)
        .def_readonly("iterations", &GarchFit::iterations)
        .def_readonly("converged", &GarchFit::converged)
        .def_readonly("mean_subtracted", &GarchFit::mean_subtracted)
        .def_readonly("n", &GarchFit::n)
        .def_readonly("low_sample_warning", &GarchFit::low_sample_warning);

    // Distributions.
    m.def("cdf", [](const std::string& name, double x, double a, double b) { return cdf(make_distribution(name, a, b), x); },
          py::arg("distribution"), py::arg("x"), py::arg("a") = 0.0, py::arg("b") = 1.0,
          "CDF of normal(a, b), chi_square(a), student_t(a) or kolmogorov.");
    m.def("survival",
          [](const std::string& name, double x, double a, double b) { return survival(make_distribution(name, a, b), x); },
          py::arg("distribution"), py::arg("x"), py::arg("a") = 0.0, py::arg("b") = 1.0);
    m.def("pdf", [](const std::string& name, double x, double a, double b) { return pdf(make_distribution(name, a, b), x); },
          py::arg("distribution"), py::arg("x"), py::arg("a") = 0.0, py::arg("b") = 1.0);
    m.def("quantile",
          [](const std::string& name, double p, double a, double b) { return quantile(make_distribution(name, a, b), p); },
          py::arg("distribution"), py::arg("p"), py::arg("a") = 0.0, py::arg("b") = 1.0);

    // Series.
    m.def("log_returns",
          [](const std::vector<double>& prices) {
              std::vector<std::string> dates;
              for (const auto d : weekday_calendar(parse_iso_date("2000-01-03"), prices.size())) {
                  dates.push_back(format_iso_date(d));
              }
              return log_returns(as_prices(dates, prices, "series")).values();
          },
          py::arg("prices"), "Percent log returns 100 * diff(log(prices)).");

    // Moments and normality.
    m.def("summarize", [](const std::vector<double>& r) { return summarize(r); }, py::arg("returns"));
    m.def("jarque_bera", [](const std::vector<double>& r) { return jarque_bera(r); }, py::arg("returns"));
    m.def("kolmogorov_smirnov",
          [](const std::vector<double>& r, const std::string& name, double a, double b) {
              return kolmogorov_smirnov(r, make_distribution(name, a, b));
          },
          py::arg("returns"), py::arg("distribution") = "normal", py::arg("a") = 0.0, py::arg("b") = 1.0);
    m.def("aggregation_scan",
          [](const std::vector<std::string>& dates, const std::vector<double>& prices,
             const std::vector<std::string>& scales) {
              py::list rows;
              for (const auto& row : aggregation_scan(as_prices(dates, prices, "series"), parse_scales(scales))) {
                  py::dict d;
                  d["scale"] = std::string(to_string(row.scale));
                  d["n_returns"] = row.n_returns;
                  d["summary"] = row.summary ? py::cast(*row.summary) : py::none();
                  d["jarque_bera"] = row.jarque_bera ? py::cast(*row.jarque_bera) : py::none();
                  d["flag"] = row.flag;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("dates"), py::arg("prices"),
          py::arg("scales") = std::vector<std::string>{"daily", "weekly", "monthly", "quarterly"});

    // Dependence.
    m.def("acf",
          [](const std::vector<double>& r, std::size_t lags, const std::string& transform) {
              return acf(r, lags, parse_transform(transform));
          },
          py::arg("returns"), py::arg("max_lag") = kDefaultLjungBoxLags, py::arg("transform") = "identity");
    m.def("ljung_box",
          [](const std::vector<double>& r, std::size_t lags, const std::string& transform) {
              return ljung_box(r, lags, parse_transform(transform));
          },
          py::arg("returns"), py::arg("lags") = kDefaultLjungBoxLags, py::arg("transform") = "identity");
    m.def("mcleod_li", [](const std::vector<double>& r, std::size_t lags) { return mcleod_li(r, lags); },
          py::arg("returns"), py::arg("max_lag") = kDefaultMcLeodLiLags);

    // Density.
    m.def("histogram", [](const std::vector<double>& r, std::size_t bins) { return curve_dict(histogram(r, bins)); },
          py::arg("returns"), py::arg("bins"));
    m.def("kde",
          [](const std::vector<double>& r, std::size_t grid, std::optional<double> bw, double t_df) {
              return curve_dict(kde(r, grid, bw, ReferenceFamily::student_t(t_df)));
          },
          py::arg("returns"), py::arg("grid_size") = 512, py::arg("bandwidth") = py::none(), py::arg("t_df") = 4.0);
    m.def("silverman_bandwidth", [](const std::vector<double>& r) { return silverman_bandwidth(r); });
    m.def("qq_points",
          [](const std::vector<double>& r, const std::string& name, double a, double b) {
              const auto qq = qq_points(r, make_distribution(name, a, b));
              std::vector<double> theoretical;
              std::vector<double> sample;
              for (const auto& p : qq.points) {
                  theoretical.push_back(p.theoretical);
                  sample.push_back(p.sample);
              }
              return py::make_tuple(theoretical, sample);
          },
          py::arg("returns"), py::arg("distribution") = "normal", py::arg("a") = 0.0, py::arg("b") = 1.0,
          "Returns (theoretical, sample) quantile lists.");

    // GARCH.
    m.def("garch_loglik",
          [](const std::vector<double>& eps, const GarchParams& p) {
              auto l = garch_loglik(eps, p);
              return py::make_tuple(l.log_likelihood, l.cond_variance);
          },
          py::arg("eps"), py::arg("params"));
    m.def("garch_loglik_gradient",
          [](const std::vector<double>& eps, const GarchParams& p) { return garch_loglik_gradient(eps, p); },
          py::arg("eps"), py::arg("params"));
    m.def("garch_fit", [](const std::vector<double>& r) { return garch_fit(r); }, py::arg("returns"),
          py::call_guard<py::gil_scoped_release>());
    m.def("garch_simulate",
          [](const GarchParams& p, std::size_t n, std::uint64_t seed, std::optional<double> t_df) {
              const auto innovation = t_df ? Innovation::student_t(*t_df) : Innovation::normal();
              return garch_simulate(p, n, seed, innovation).values();
          },
          py::arg("params"), py::arg("n"), py::arg("seed"), py::arg("t_df") = py::none());
    m.def("volatility_bands",
          [](const std::vector<double>& r, const GarchFit& fit, double k) {
              std::vector<double> normalized;
              std::vector<double> upper;
              for (const auto& b : volatility_bands(as_returns(r), fit, k)) {
                  normalized.push_back(b.normalized_return);
                  upper.push_back(b.upper);
              }
              return py::make_tuple(normalized, upper);
          },
          py::arg("returns"), py::arg("fit"), py::arg("k") = 2.0,
          "Returns (normalized_return, upper_band); the lower band is -upper_band.");

    // Ingestion and reports.
    m.def("ingest_csv",
          [](const std::filesystem::path& path, const std::string& date_col, const std::string& price_col,
             const std::string& date_format) {
              IngestSpec spec;
              spec.path = path;
              spec.date_column = date_col;
              spec.price_column = price_col;
              spec.date_format = date_format;
              const auto p = ingest(spec);
              std::vector<std::string> dates;
              for (const auto& o : p.observations()) dates.push_back(format_iso_date(o.date));
              return py::make_tuple(dates, p.prices());
          },
          py::arg("path"), py::arg("date_col") = "date", py::arg("price_col") = "adj_close",
          py::arg("date_format") = "%Y-%m-%d", "Returns (iso_dates, prices), sorted by date.");
    m.def("report_json",
          [](const std::vector<std::string>& dates, const std::vector<double>& prices, const std::string& instrument_id,
             std::optional<std::string> generated_at, bool garch, std::size_t lags, std::size_t ml_lags) {
              ReportConfig config;
              config.generated_at = std::move(generated_at);
              config.garch = garch;
              config.lags = lags;
              config.ml_lags = ml_lags;
              const auto series = as_prices(dates, prices, instrument_id);
              py::gil_scoped_release release;
              return report_json_string(run_report(series, config));
          },
          py::arg("dates"), py::arg("prices"), py::arg("instrument_id") = "series",
          py::arg("generated_at") = py::none(), py::arg("garch") = true, py::arg("lags") = kDefaultLjungBoxLags,
          py::arg("ml_lags") = kDefaultMcLeodLiLags, "Full report as a JSON document string.");
}
