// Command-line front end: full stylized-facts reports and single analyses.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
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

namespace {

using namespace stylized;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIngest = 1;
constexpr int kExitPartial = 2;
constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputOptions {
    std::string file;
    std::string date_col = "date";
    std::string price_col = "adj_close";
    std::string date_format = "%Y-%m-%d";
    bool keep_last = false;
    std::optional<std::size_t> subsample_last;
    std::string scale = "daily";

    void attach(CLI::App* cmd, bool with_scale = true) {
        cmd->add_option("file", file, "CSV price file with a header row")->required();
        cmd->add_option("--date-col", date_col, "date column name or 0-based index")->capture_default_str();
        cmd->add_option("--price-col", price_col, "price column name or 0-based index")->capture_default_str();
        cmd->add_option("--date-format", date_format, "strptime-style date format")->capture_default_str();
        cmd->add_flag("--keep-last-duplicate", keep_last, "keep the last row when a date repeats");
        if (with_scale) {
            cmd->add_option("--scale", scale, "daily, weekly, monthly or quarterly")->capture_default_str();
            cmd->add_option("--subsample-last", subsample_last, "restrict to the most recent N returns");
        }
    }

    [[nodiscard]] PriceSeries prices() const {
        IngestSpec spec;
        spec.path = file;
        spec.date_column = date_col;
        spec.price_column = price_col;
        spec.date_format = date_format;
        spec.on_duplicate = keep_last ? DuplicatePolicy::keep_last : DuplicatePolicy::error;
        return ingest(spec);
    }

    [[nodiscard]] ReturnSeries returns(const PriceSeries& p) const {
        auto r = log_returns(resample(p, parse_scale(scale)));
        return subsample_last ? r.tail(*subsample_last) : r;
    }

    static TimeScale parse_scale(const std::string& text) {
        try {
            return parse_time_scale(text);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
};

std::vector<TimeScale> parse_scales(const std::string& csv) {
    std::vector<TimeScale> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(InputOptions::parse_scale(item));
    }
    if (out.empty()) throw UsageError("--scales needs at least one time scale");
    return out;
}

json envelope(const std::string& instrument, const std::string& key, json value) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["instrument_id"] = instrument;
    j[key] = std::move(value);
    return j;
}

void write_output(const json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write '" + out + "'");
    f << text;
}

// --- report ------------------------------------------------------------------

struct ReportOptions {
    InputOptions in;
    std::string out = "report";
    std::string format = "all";
    std::size_t lags = kDefaultLjungBoxLags;
    std::size_t ml_lags = kDefaultMcLeodLiLags;
    std::string scales = "daily,weekly,monthly,quarterly";
    double t_df = 4.0;
    double band_k = 2.0;
    std::vector<std::size_t> subsample_last;
    std::uint64_t seed = 0;
    bool no_garch = false;
    std::optional<std::size_t> bins;
    std::string fixed_clock;
    bool sequential = false;
};

int run_report_command(const ReportOptions& o) {
    ReportConfig config;
    config.lags = o.lags;
    config.ml_lags = o.ml_lags;
    config.scales = parse_scales(o.scales);
    config.t_df = o.t_df;
    config.band_k = o.band_k;
    config.subsample_last = o.subsample_last;
    config.seed = o.seed;
    config.garch = !o.no_garch;
    config.histogram_bins = o.bins;
    config.concurrent = !o.sequential;
    if (!o.fixed_clock.empty()) {
        config.generated_at = o.fixed_clock;
    } else if (const char* env = std::getenv("STYLIZED_FIXED_CLOCK"); env && *env) {
        config.generated_at = env;
    }

    std::vector<EmitFormat> formats;
    if (o.format == "all") {
        formats = {EmitFormat::json, EmitFormat::csv, EmitFormat::svg};
    } else {
        try {
            formats = {parse_emit_format(o.format)};
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }

    const PriceSeries prices = o.in.prices();
    if (prices.size() < 2) throw IngestError("a report needs at least 2 prices", 0);
    const ReportBundle bundle = run_report(prices, config);
    for (const auto f : formats) {
        for (const auto& path : emit(bundle, f, o.out)) std::cerr << "wrote " << path.string() << "\n";
    }
    for (const auto& e : bundle.stage_errors) {
        std::cerr << "warning: stage " << e.stage << " failed (" << e.kind << "): " << e.message << "\n";
    }
    for (const auto& row : bundle.aggregation) {
        if (!row.flag.empty()) std::cerr << "warning: " << to_string(row.scale) << " scale flagged " << row.flag << "\n";
    }
    return bundle.partial() ? kExitPartial : kExitOk;
}

// --- simulate ----------------------------------------------------------------

struct SimulateOptions {
    std::size_t n = 3746;
    double omega = 0.1;
    double alpha = 0.1;
    double beta = 0.8;
    std::uint64_t seed = 1;
    std::optional<double> t_df;
    double start_price = 100.0;
    std::string start_date = "2000-01-03";
    std::string out;
};

int run_simulate(const SimulateOptions& o) {
    const GarchParams params{o.omega, o.alpha, o.beta};
    const auto innovation = o.t_df ? Innovation::student_t(*o.t_df) : Innovation::normal();
    std::optional<ReturnSeries> simulated;
    try {
        simulated = garch_simulate(params, o.n, o.seed, innovation);
        (void)parse_iso_date(o.start_date);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const auto& sim = *simulated;

    const auto dates = weekday_calendar(parse_iso_date(o.start_date), o.n + 1);
    std::ostringstream csv;
    csv.precision(17);
    csv << "date,adj_close\n" << format_iso_date(dates[0]) << "," << o.start_price << "\n";
    double log_price = std::log(o.start_price);
    for (std::size_t t = 0; t < o.n; ++t) {
        log_price += sim.values()[t] / 100.0;
        csv << format_iso_date(dates[t + 1]) << "," << std::exp(log_price) << "\n";
    }
    if (o.out.empty() || o.out == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw Error("cannot write '" + o.out + "'");
        f << csv.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stylized facts of financial return series"};
    app.set_version_flag("--version", "stylized-cli schema " + std::to_string(kSchemaVersion));
    app.require_subcommand(1);

    ReportOptions ro;
    auto* report = app.add_subcommand("report", "full stylized-facts report (json, csv and svg outputs)");
    ro.in.attach(report, false);
    report->add_option("--out", ro.out, "output directory")->capture_default_str();
    report->add_option("--format", ro.format, "json, csv, svg or all")
        ->check(CLI::IsMember({"json", "csv", "svg", "all", "csv-dir", "svg-dir"}))
        ->capture_default_str();
    report->add_option("--lags", ro.lags, "Ljung-Box / ACF lags")->check(CLI::PositiveNumber)->capture_default_str();
    report->add_option("--ml-lags", ro.ml_lags, "McLeod-Li maximum lag")->check(CLI::PositiveNumber)->capture_default_str();
    report->add_option("--scales", ro.scales, "comma-separated time scales")->capture_default_str();
    report->add_option("--t-df", ro.t_df, "Student-t reference degrees of freedom")->capture_default_str();
    report->add_option("--band-k", ro.band_k, "volatility band multiplier")->capture_default_str();
    report->add_option("--subsample-last", ro.subsample_last, "extra Ljung-Box rows on the most recent N returns");
    report->add_option("--seed", ro.seed, "seed recorded in the report metadata")->capture_default_str();
    report->add_flag("--no-garch", ro.no_garch, "skip the GARCH(1,1) stage");
    report->add_option("--bins", ro.bins, "histogram bins (default: Sturges)")->check(CLI::PositiveNumber);
    report->add_option("--fixed-clock", ro.fixed_clock, "timestamp to record instead of the current time");
    report->add_flag("--sequential", ro.sequential, "run report stages on one thread");

    InputOptions si;
    auto* summary = app.add_subcommand("summary", "summary statistics");
    si.attach(summary);

    InputOptions ni;
    auto* normality = app.add_subcommand("normality", "Jarque-Bera and Kolmogorov-Smirnov tests");
    ni.attach(normality);

    InputOptions ai;
    std::size_t acf_lags = kDefaultLjungBoxLags;
    std::string acf_transform = "identity";
    auto* acf_cmd = app.add_subcommand("acf", "autocorrelation function with 95% band");
    ai.attach(acf_cmd);
    acf_cmd->add_option("--lags", acf_lags)->check(CLI::PositiveNumber)->capture_default_str();
    acf_cmd->add_option("--transform", acf_transform, "identity, square or absolute")->capture_default_str();

    InputOptions li;
    std::size_t lb_lags = kDefaultLjungBoxLags;
    std::string lb_transform = "identity";
    auto* lb_cmd = app.add_subcommand("lb", "Ljung-Box portmanteau test");
    li.attach(lb_cmd);
    lb_cmd->add_option("--lags", lb_lags)->check(CLI::PositiveNumber)->capture_default_str();
    lb_cmd->add_option("--transform", lb_transform, "identity, square or absolute")->capture_default_str();

    InputOptions mi;
    std::size_t ml_lags = kDefaultMcLeodLiLags;
    auto* ml_cmd = app.add_subcommand("mcleod-li", "McLeod-Li test curve for lags 1..m");
    mi.attach(ml_cmd);
    ml_cmd->add_option("--ml-lags", ml_lags)->check(CLI::PositiveNumber)->capture_default_str();

    InputOptions gi;
    std::string agg_scales = "daily,weekly,monthly,quarterly";
    auto* agg_cmd = app.add_subcommand("agg-gauss", "moments and Jarque-Bera across time scales");
    gi.attach(agg_cmd, false);
    agg_cmd->add_option("--scales", agg_scales)->capture_default_str();

    InputOptions qi;
    std::string qq_ref = "normal";
    double qq_df = 4.0;
    auto* qq_cmd = app.add_subcommand("qq", "QQ points against a normal or Student-t reference");
    qi.attach(qq_cmd);
    qq_cmd->add_option("--ref", qq_ref, "normal or t")->check(CLI::IsMember({"normal", "t", "student_t"}))
        ->capture_default_str();
    qq_cmd->add_option("--t-df", qq_df)->capture_default_str();

    InputOptions ki;
    std::size_t kde_grid = 512;
    std::optional<double> kde_bw;
    double kde_df = 4.0;
    auto* kde_cmd = app.add_subcommand("kde", "Gaussian kernel density with a Student-t reference");
    ki.attach(kde_cmd);
    kde_cmd->add_option("--grid", kde_grid)->check(CLI::Range(2, 1 << 20))->capture_default_str();
    kde_cmd->add_option("--bandwidth", kde_bw, "default: Silverman's rule")->check(CLI::PositiveNumber);
    kde_cmd->add_option("--t-df", kde_df)->capture_default_str();

    InputOptions hi;
    double garch_k = 2.0;
    bool garch_bands = false;
    auto* garch_cmd = app.add_subcommand("garch", "GARCH(1,1) quasi-maximum-likelihood fit");
    hi.attach(garch_cmd);
    garch_cmd->add_option("--band-k", garch_k)->capture_default_str();
    garch_cmd->add_flag("--bands", garch_bands, "include the volatility band series");

    SimulateOptions so;
    auto* sim_cmd = app.add_subcommand("simulate", "write a simulated GARCH(1,1) price CSV");
    sim_cmd->add_option("--n", so.n, "number of returns")->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--omega", so.omega)->capture_default_str();
    sim_cmd->add_option("--alpha", so.alpha)->capture_default_str();
    sim_cmd->add_option("--beta", so.beta)->capture_default_str();
    sim_cmd->add_option("--seed", so.seed)->capture_default_str();
    sim_cmd->add_option("--t-df", so.t_df, "Student-t innovations (default: normal)");
    sim_cmd->add_option("--start-price", so.start_price)->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--start-date", so.start_date)->capture_default_str();
    sim_cmd->add_option("--out", so.out, "output CSV (default: stdout)");

    std::string single_out;
    for (auto* cmd : {summary, normality, acf_cmd, lb_cmd, ml_cmd, agg_cmd, qq_cmd, kde_cmd, garch_cmd}) {
        cmd->add_option("--out", single_out, "output JSON file (default: stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    auto load = [](const InputOptions& in) { return in.prices(); };

    try {
        if (*report) return run_report_command(ro);
        if (*sim_cmd) return run_simulate(so);

        if (*summary) {
            const auto p = load(si);
            const auto r = si.returns(p);
            write_output(envelope(p.instrument_id(), "summarize", to_json_value(summarize(r))), single_out);
        } else if (*normality) {
            const auto p = load(ni);
            const auto r = ni.returns(p);
            const auto s = summarize(r);
            json tests = json::array();
            tests.push_back(to_json_value(jarque_bera(r)));
            tests.push_back(to_json_value(kolmogorov_smirnov(r, Distribution::normal(s.mean, s.std_dev))));
            write_output(envelope(p.instrument_id(), "tests", tests), single_out);
        } else if (*acf_cmd) {
            const auto p = load(ai);
            const auto r = ai.returns(p);
            Transform t;
            try {
                t = parse_transform(acf_transform);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            write_output(envelope(p.instrument_id(), "acf", to_json_value(acf(r, acf_lags, t))), single_out);
        } else if (*lb_cmd) {
            const auto p = load(li);
            const auto r = li.returns(p);
            Transform t;
            try {
                t = parse_transform(lb_transform);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            write_output(envelope(p.instrument_id(), "ljung_box", to_json_value(ljung_box(r, lb_lags, t))),
                         single_out);
        } else if (*ml_cmd) {
            const auto p = load(mi);
            const auto r = mi.returns(p);
            json curve = json::array();
            for (const auto& [m, res] : mcleod_li(r, ml_lags)) curve.push_back({{"lag", m}, {"result", to_json_value(res)}});
            write_output(envelope(p.instrument_id(), "mcleod_li", curve), single_out);
        } else if (*agg_cmd) {
            const auto p = load(gi);
            const auto rows = aggregation_scan(p, parse_scales(agg_scales));
            json out = json::array();
            bool flagged = false;
            for (const auto& row : rows) {
                out.push_back(to_json_value(row));
                flagged = flagged || !row.flag.empty();
            }
            write_output(envelope(p.instrument_id(), "aggregation_scan", out), single_out);
            return flagged ? kExitPartial : kExitOk;
        } else if (*qq_cmd) {
            const auto p = load(qi);
            const auto r = qi.returns(p);
            Distribution ref = Distribution::student_t(qq_df);
            if (qq_ref == "normal") {
                const auto s = summarize(r);
                if (s.degenerate) throw DegenerateSeriesError("cannot fit a normal reference to a constant series");
                ref = Distribution::normal(s.mean, s.std_dev);
            }
            write_output(envelope(p.instrument_id(), "qq_points", to_json_value(qq_points(r, ref))), single_out);
        } else if (*kde_cmd) {
            const auto p = load(ki);
            const auto r = ki.returns(p);
            write_output(envelope(p.instrument_id(), "kde",
                                  to_json_value(kde(r, kde_grid, kde_bw, ReferenceFamily::student_t(kde_df)))),
                         single_out);
        } else if (*garch_cmd) {
            const auto p = load(hi);
            const auto r = hi.returns(p);
            const auto fit = garch_fit(r);
            auto j = envelope(p.instrument_id(), "garch_fit", to_json_value(fit));
            if (garch_bands) {
                json bands = json::array();
                for (const auto& b : volatility_bands(r, fit, garch_k)) bands.push_back(to_json_value(b));
                j["volatility_bands"] = bands;
                j["band_k"] = garch_k;
            }
            write_output(j, single_out);
            if (!fit.converged || fit.low_sample_warning) return kExitPartial;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IngestError& e) {
        std::cerr << "ingestion failed: " << e.what() << "\n";
        return kExitIngest;
    } catch (const Error& e) {
        std::cerr << "analysis failed: " << e.what() << "\n";
        return kExitPartial;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
}
