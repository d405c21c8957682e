#include "stylized/report_json.hpp"

#include <limits>

#include "stylized/errors.hpp"

namespace stylized {

using nlohmann::json;

namespace {

template <typename T>
json optional_value(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> read_optional(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

json distribution_json(const Distribution& d) {
    switch (d.kind()) {
        case Distribution::Kind::normal: return {{"kind", "normal"}, {"mean", d.mean()}, {"sd", d.sd()}};
        case Distribution::Kind::chi_square: return {{"kind", "chi_square"}, {"df", d.df()}};
        case Distribution::Kind::student_t: return {{"kind", "student_t"}, {"df", d.df()}};
        case Distribution::Kind::kolmogorov: return {{"kind", "kolmogorov"}};
    }
    return {};
}

Distribution distribution_from(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "normal") return Distribution::normal(j.at("mean").get<double>(), j.at("sd").get<double>());
    if (kind == "chi_square") return Distribution::chi_square(j.at("df").get<double>());
    if (kind == "student_t") return Distribution::student_t(j.at("df").get<double>());
    if (kind == "kolmogorov") return Distribution::kolmogorov();
    throw Error("unknown distribution kind '" + kind + "'");
}

json params_json(const GarchParams& p) { return {{"omega", p.omega}, {"alpha", p.alpha}, {"beta", p.beta}}; }

GarchParams params_from(const json& j) {
    return {j.at("omega").get<double>(), j.at("alpha").get<double>(), j.at("beta").get<double>()};
}

SummaryStats summary_from(const json& j) {
    SummaryStats s;
    s.n = j.at("n").get<std::size_t>();
    s.mean = j.at("mean").get<double>();
    s.median = j.at("median").get<double>();
    s.min = j.at("min").get<double>();
    s.max = j.at("max").get<double>();
    s.std_dev = j.at("std_dev").get<double>();
    s.skewness = read_optional<double>(j, "skewness");
    s.kurtosis = read_optional<double>(j, "kurtosis");
    s.degenerate = j.at("degenerate").get<bool>();
    return s;
}

TestResult test_from(const json& j) {
    TestResult t;
    t.test_name = j.at("test_name").get<std::string>();
    t.statistic = j.at("statistic").get<double>();
    t.df = read_optional<double>(j, "df");
    t.p_value = j.at("p_value").get<double>();
    t.null_hypothesis = j.at("null_hypothesis").get<std::string>();
    t.null_distribution = j.at("null_distribution").get<std::string>();
    t.sample_size = j.at("sample_size").get<std::size_t>();
    return t;
}

AcfResult acf_from(const json& j) {
    AcfResult a;
    a.transform = parse_transform(j.at("transform").get<std::string>());
    a.rho = j.at("rho").get<std::vector<double>>();
    a.band_halfwidth = j.at("band_halfwidth").get<double>();
    a.n = j.at("n").get<std::size_t>();
    return a;
}

DensityCurve density_from(const json& j) {
    DensityCurve d;
    const auto kind = j.at("kind").get<std::string>();
    d.kind = kind == "kde" ? DensityKind::kde : DensityKind::histogram;
    d.grid = j.at("grid").get<std::vector<double>>();
    d.empirical = j.at("empirical").get<std::vector<double>>();
    d.reference = j.at("reference").get<std::vector<double>>();
    d.bin_edges = j.at("bin_edges").get<std::vector<double>>();
    d.bandwidth = j.at("bandwidth").get<double>();
    d.reference_label = j.at("reference_label").get<std::string>();
    return d;
}

QQPoints qq_from(const json& j) {
    QQPoints q;
    q.reference = distribution_from(j.at("reference"));
    q.standardized = j.at("standardized").get<bool>();
    const auto& theo = j.at("theoretical");
    const auto& samp = j.at("sample");
    for (std::size_t i = 0; i < theo.size(); ++i) q.points.push_back({theo[i].get<double>(), samp[i].get<double>()});
    return q;
}

GarchFit garch_from(const json& j) {
    GarchFit f;
    f.params = params_from(j.at("params"));
    f.log_likelihood = j.at("log_likelihood").get<double>();
    f.cond_variance = j.at("cond_variance").get<std::vector<double>>();
    f.iterations = j.at("iterations").get<std::size_t>();
    f.converged = j.at("converged").get<bool>();
    f.mean_subtracted = j.at("mean_subtracted").get<double>();
    f.n = j.at("n").get<std::size_t>();
    f.low_sample_warning = j.at("low_sample_warning").get<bool>();
    for (const auto& s : j.at("starts")) {
        GarchStart g;
        g.initial = params_from(s.at("initial"));
        g.initial_log_likelihood = s.at("initial_log_likelihood").get<double>();
        g.estimate = params_from(s.at("estimate"));
        g.log_likelihood = s.at("log_likelihood").is_null() ? -std::numeric_limits<double>::infinity()
                                                             : s.at("log_likelihood").get<double>();
        g.iterations = s.at("iterations").get<std::size_t>();
        g.converged = s.at("converged").get<bool>();
        g.finite = s.at("finite").get<bool>();
        f.starts.push_back(g);
    }
    return f;
}

}  // namespace

json to_json_value(const SummaryStats& s) {
    return {{"n", s.n},
            {"mean", s.mean},
            {"median", s.median},
            {"min", s.min},
            {"max", s.max},
            {"std_dev", s.std_dev},
            {"skewness", optional_value(s.skewness)},
            {"kurtosis", optional_value(s.kurtosis)},
            {"degenerate", s.degenerate}};
}

json to_json_value(const TestResult& t) {
    return {{"test_name", t.test_name},
            {"statistic", t.statistic},
            {"df", optional_value(t.df)},
            {"p_value", t.p_value},
            {"null_hypothesis", t.null_hypothesis},
            {"null_distribution", t.null_distribution},
            {"sample_size", t.sample_size}};
}

json to_json_value(const AggregationRow& row) {
    return {{"scale", std::string(to_string(row.scale))},
            {"n_returns", row.n_returns},
            {"summarize", row.summary ? to_json_value(*row.summary) : json(nullptr)},
            {"jarque_bera", row.jarque_bera ? to_json_value(*row.jarque_bera) : json(nullptr)},
            {"flag", row.flag}};
}

json to_json_value(const AcfResult& a) {
    return {{"transform", std::string(to_string(a.transform))},
            {"rho", a.rho},
            {"band_halfwidth", a.band_halfwidth},
            {"n", a.n}};
}

json to_json_value(const DensityCurve& d) {
    return {{"kind", d.kind == DensityKind::kde ? "kde" : "histogram"},
            {"grid", d.grid},
            {"empirical", d.empirical},
            {"reference", d.reference},
            {"bin_edges", d.bin_edges},
            {"bandwidth", d.bandwidth},
            {"reference_label", d.reference_label}};
}

json to_json_value(const QQPoints& q) {
    std::vector<double> theo, samp;
    for (const auto& p : q.points) {
        theo.push_back(p.theoretical);
        samp.push_back(p.sample);
    }
    return {{"reference", distribution_json(q.reference)},
            {"standardized", q.standardized},
            {"plotting_position", "hazen"},
            {"theoretical", theo},
            {"sample", samp}};
}

json to_json_value(const GarchFit& f) {
    json starts = json::array();
    for (const auto& s : f.starts) {
        starts.push_back({{"initial", params_json(s.initial)},
                          {"initial_log_likelihood", s.initial_log_likelihood},
                          {"estimate", params_json(s.estimate)},
                          {"log_likelihood", s.finite ? json(s.log_likelihood) : json(nullptr)},
                          {"iterations", s.iterations},
                          {"converged", s.converged},
                          {"finite", s.finite}});
    }
    return {{"params", params_json(f.params)},
            {"persistence", f.params.persistence()},
            {"log_likelihood", f.log_likelihood},
            {"iterations", f.iterations},
            {"converged", f.converged},
            {"mean_subtracted", f.mean_subtracted},
            {"n", f.n},
            {"low_sample_warning", f.low_sample_warning},
            {"starts", starts},
            {"cond_variance", f.cond_variance}};
}

json to_json_value(const LagPair& p) {
    return {{"date", format_iso_date(p.date)}, {"previous", p.previous}, {"current", p.current}};
}

json to_json_value(const BandPoint& b) {
    return {{"date", format_iso_date(b.date)},
            {"normalized_return", b.normalized_return},
            {"upper", b.upper},
            {"lower", b.lower}};
}

json report_to_json(const ReportBundle& bundle) {
    json j;
    j["schema_version"] = bundle.schema_version;
    j["instrument_id"] = bundle.instrument_id;
    j["generated_at"] = bundle.generated_at;
    j["n_prices"] = bundle.n_prices;
    j["first_date"] = bundle.first_date;
    j["last_date"] = bundle.last_date;

    json returns = json::array();
    for (const auto& r : bundle.returns) returns.push_back({{"date", format_iso_date(r.date)}, {"ret", r.ret}});
    j["log_returns"] = returns;
    j["summarize"] = bundle.summary ? to_json_value(*bundle.summary) : json(nullptr);

    j["tests"] = json::array();
    for (const auto& t : bundle.tests) j["tests"].push_back(to_json_value(t));
    j["aggregation_scan"] = json::array();
    for (const auto& row : bundle.aggregation) j["aggregation_scan"].push_back(to_json_value(row));
    j["acf"] = json::array();
    for (const auto& a : bundle.acf) j["acf"].push_back(to_json_value(a));
    j["ljung_box"] = json::array();
    for (const auto& lb : bundle.ljung_box) {
        j["ljung_box"].push_back({{"transform", std::string(to_string(lb.transform))},
                                  {"subsample", lb.subsample},
                                  {"sample_size", lb.sample_size},
                                  {"result", to_json_value(lb.result)}});
    }
    j["mcleod_li"] = json::array();
    for (const auto& m : bundle.mcleod_li) {
        j["mcleod_li"].push_back({{"lag", m.lag}, {"result", to_json_value(m.result)}});
    }
    j["density"] = json::array();
    for (const auto& d : bundle.density) j["density"].push_back({{"name", d.name}, {"curve", to_json_value(d.curve)}});
    j["qq_points"] = json::array();
    for (const auto& q : bundle.qq) j["qq_points"].push_back({{"name", q.name}, {"qq", to_json_value(q.qq)}});
    j["lag_pairs"] = json::array();
    for (const auto& p : bundle.lag_pairs) j["lag_pairs"].push_back(to_json_value(p));

    if (bundle.garch) {
        json bands = json::array();
        for (const auto& b : bundle.garch->bands) bands.push_back(to_json_value(b));
        j["garch"] = {{"garch_fit", to_json_value(bundle.garch->fit)},
                      {"band_k", bundle.garch->band_k},
                      {"volatility_bands", bands}};
    } else {
        j["garch"] = nullptr;
    }

    j["metadata"] = bundle.metadata;
    j["stage_errors"] = json::array();
    for (const auto& e : bundle.stage_errors) {
        j["stage_errors"].push_back({{"stage", e.stage}, {"kind", e.kind}, {"message", e.message}});
    }
    j["partial"] = bundle.partial();
    return j;
}

ReportBundle report_from_json(const json& j) {
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
        throw Error("unsupported report schema_version " + std::to_string(version));
    }
    ReportBundle b;
    b.schema_version = version;
    b.instrument_id = j.at("instrument_id").get<std::string>();
    b.generated_at = j.at("generated_at").get<std::string>();
    b.n_prices = j.at("n_prices").get<std::size_t>();
    b.first_date = j.at("first_date").get<std::string>();
    b.last_date = j.at("last_date").get<std::string>();
    for (const auto& r : j.at("log_returns")) {
        b.returns.push_back({parse_iso_date(r.at("date").get<std::string>()), r.at("ret").get<double>()});
    }
    if (!j.at("summarize").is_null()) b.summary = summary_from(j.at("summarize"));
    for (const auto& t : j.at("tests")) b.tests.push_back(test_from(t));
    for (const auto& r : j.at("aggregation_scan")) {
        AggregationRow row;
        row.scale = parse_time_scale(r.at("scale").get<std::string>());
        row.n_returns = r.at("n_returns").get<std::size_t>();
        if (!r.at("summarize").is_null()) row.summary = summary_from(r.at("summarize"));
        if (!r.at("jarque_bera").is_null()) row.jarque_bera = test_from(r.at("jarque_bera"));
        row.flag = r.at("flag").get<std::string>();
        b.aggregation.push_back(std::move(row));
    }
    for (const auto& a : j.at("acf")) b.acf.push_back(acf_from(a));
    for (const auto& lb : j.at("ljung_box")) {
        b.ljung_box.push_back({parse_transform(lb.at("transform").get<std::string>()),
                               lb.at("subsample").get<std::string>(), lb.at("sample_size").get<std::size_t>(),
                               test_from(lb.at("result"))});
    }
    for (const auto& m : j.at("mcleod_li")) {
        b.mcleod_li.push_back({m.at("lag").get<std::size_t>(), test_from(m.at("result"))});
    }
    for (const auto& d : j.at("density")) {
        b.density.push_back({d.at("name").get<std::string>(), density_from(d.at("curve"))});
    }
    for (const auto& q : j.at("qq_points")) b.qq.push_back({q.at("name").get<std::string>(), qq_from(q.at("qq"))});
    for (const auto& p : j.at("lag_pairs")) {
        b.lag_pairs.push_back({parse_iso_date(p.at("date").get<std::string>()), p.at("previous").get<double>(),
                               p.at("current").get<double>()});
    }
    if (!j.at("garch").is_null()) {
        const auto& g = j.at("garch");
        GarchReport report;
        report.fit = garch_from(g.at("garch_fit"));
        report.band_k = g.at("band_k").get<double>();
        for (const auto& band : g.at("volatility_bands")) {
            report.bands.push_back({parse_iso_date(band.at("date").get<std::string>()),
                                    band.at("normalized_return").get<double>(), band.at("upper").get<double>(),
                                    band.at("lower").get<double>()});
        }
        b.garch = std::move(report);
    }
    b.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& e : j.at("stage_errors")) {
        b.stage_errors.push_back(
            {e.at("stage").get<std::string>(), e.at("kind").get<std::string>(), e.at("message").get<std::string>()});
    }
    return b;
}

std::string report_json_string(const ReportBundle& bundle) { return report_to_json(bundle).dump(2) + "\n"; }

}  // namespace stylized
