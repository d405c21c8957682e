#include "stylized/emit.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <functional>
#include <string>

#include "stylized/errors.hpp"
#include "stylized/report_json.hpp"
#include "stylized/svg.hpp"

namespace stylized {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error("cannot create directory '" + dir.string() + "'");
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    [[nodiscard]] std::string str() const {
        std::string s;
        append(s, header_);
        for (const auto& r : rows_) append(s, r);
        return s;
    }

private:
    static void append(std::string& s, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += csv_field(cells[i]);
        }
        s += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

double decimal_year(Date d) {
    using namespace std::chrono;
    const year_month_day ymd{d};
    const sys_days start{ymd.year() / January / 1};
    return static_cast<int>(ymd.year()) + static_cast<double>((d - start).count()) / 365.25;
}

std::vector<fs::path> emit_csv(const ReportBundle& b, const fs::path& dir) {
    ensure_dir(dir);
    std::vector<fs::path> files;
    auto save = [&](const std::string& name, const CsvTable& table) {
        const auto path = dir / (name + ".csv");
        write_file(path, table.str());
        files.push_back(path);
    };

    {
        CsvTable t({"log_returns.date", "log_returns.ret"});
        for (const auto& r : b.returns) t.row({format_iso_date(r.date), fmt(r.ret)});
        save("returns", t);
    }
    {
        CsvTable t({"aggregation_scan.scale", "summarize.n", "summarize.mean", "summarize.median", "summarize.min",
                    "summarize.max", "summarize.std_dev", "summarize.skewness", "summarize.kurtosis",
                    "jarque_bera.statistic", "jarque_bera.p_value", "aggregation_scan.flag"});
        for (const auto& row : b.aggregation) {
            std::vector<std::string> cells{std::string(to_string(row.scale))};
            if (row.summary) {
                const auto& s = *row.summary;
                for (auto v : {fmt(static_cast<double>(s.n)), fmt(s.mean), fmt(s.median), fmt(s.min), fmt(s.max),
                               fmt(s.std_dev), fmt(s.skewness), fmt(s.kurtosis)}) {
                    cells.push_back(v);
                }
            } else {
                cells.insert(cells.end(), 8, "");
            }
            cells.push_back(row.jarque_bera ? fmt(row.jarque_bera->statistic) : "");
            cells.push_back(row.jarque_bera ? fmt(row.jarque_bera->p_value) : "");
            cells.push_back(row.flag);
            t.row(std::move(cells));
        }
        save("summary", t);
    }
    {
        CsvTable t({"test.name", "test.statistic", "test.df", "test.p_value", "test.sample_size",
                    "test.null_hypothesis", "test.null_distribution"});
        for (const auto& r : b.tests) {
            t.row({r.test_name, fmt(r.statistic), fmt(r.df), fmt(r.p_value), std::to_string(r.sample_size),
                   r.null_hypothesis, r.null_distribution});
        }
        save("tests", t);
    }
    {
        CsvTable t({"ljung_box.transform", "ljung_box.subsample", "ljung_box.sample_size", "ljung_box.statistic",
                    "ljung_box.df", "ljung_box.p_value"});
        for (const auto& r : b.ljung_box) {
            t.row({std::string(to_string(r.transform)), r.subsample, std::to_string(r.sample_size),
                   fmt(r.result.statistic), fmt(r.result.df), fmt(r.result.p_value)});
        }
        save("ljung_box", t);
    }
    for (const auto& a : b.acf) {
        CsvTable t({"acf.lag", "acf.rho", "acf.band_halfwidth"});
        for (std::size_t k = 0; k < a.rho.size(); ++k) {
            t.row({std::to_string(k + 1), fmt(a.rho[k]), fmt(a.band_halfwidth)});
        }
        save("acf_" + std::string(to_string(a.transform)), t);
    }
    {
        CsvTable t({"mcleod_li.lag", "mcleod_li.statistic", "mcleod_li.p_value"});
        for (const auto& m : b.mcleod_li) t.row({std::to_string(m.lag), fmt(m.result.statistic), fmt(m.result.p_value)});
        save("mcleod_li", t);
    }
    for (const auto& d : b.density) {
        const std::string op = d.curve.kind == DensityKind::kde ? "kde" : "histogram";
        CsvTable t({op + ".x", op + ".density", op + ".reference_density"});
        for (std::size_t i = 0; i < d.curve.grid.size(); ++i) {
            t.row({fmt(d.curve.grid[i]), fmt(d.curve.empirical[i]), fmt(d.curve.reference[i])});
        }
        save("density_" + d.name, t);
    }
    for (const auto& q : b.qq) {
        CsvTable t({"qq_points.theoretical", "qq_points.sample"});
        for (const auto& p : q.qq.points) t.row({fmt(p.theoretical), fmt(p.sample)});
        save("qq_" + q.name, t);
    }
    {
        CsvTable t({"lag_pairs.date", "lag_pairs.previous", "lag_pairs.current"});
        for (const auto& p : b.lag_pairs) t.row({format_iso_date(p.date), fmt(p.previous), fmt(p.current)});
        save("lag_pairs", t);
    }
    if (b.garch) {
        const auto& f = b.garch->fit;
        CsvTable params({"garch_fit.field", "garch_fit.value"});
        params.row({"omega", fmt(f.params.omega)});
        params.row({"alpha", fmt(f.params.alpha)});
        params.row({"beta", fmt(f.params.beta)});
        params.row({"log_likelihood", fmt(f.log_likelihood)});
        params.row({"iterations", std::to_string(f.iterations)});
        params.row({"converged", f.converged ? "true" : "false"});
        params.row({"mean_subtracted", fmt(f.mean_subtracted)});
        params.row({"n", std::to_string(f.n)});
        save("garch_fit", params);

        CsvTable vol({"garch_fit.date", "garch_fit.cond_variance", "garch_fit.cond_volatility"});
        for (std::size_t t = 0; t < f.cond_variance.size() && t < b.returns.size(); ++t) {
            vol.row({format_iso_date(b.returns[t].date), fmt(f.cond_variance[t]), fmt(std::sqrt(f.cond_variance[t]))});
        }
        save("garch_volatility", vol);

        CsvTable bands({"volatility_bands.date", "volatility_bands.normalized_return", "volatility_bands.upper",
                        "volatility_bands.lower"});
        for (const auto& p : b.garch->bands) {
            bands.row({format_iso_date(p.date), fmt(p.normalized_return), fmt(p.upper), fmt(p.lower)});
        }
        save("volatility_bands", bands);
    }
    {
        CsvTable t({"metadata.key", "metadata.value"});
        for (const auto& [k, v] : b.metadata) t.row({k, v});
        save("metadata", t);
    }
    {
        CsvTable t({"stage_error.stage", "stage_error.kind", "stage_error.message"});
        for (const auto& e : b.stage_errors) t.row({e.stage, e.kind, e.message});
        save("stage_errors", t);
    }
    return files;
}

std::vector<fs::path> emit_svg(const ReportBundle& b, const fs::path& dir) {
    ensure_dir(dir);
    std::vector<fs::path> files;
    auto save = [&](const std::string& name, const SvgChart& chart) {
        const auto path = dir / (name + ".svg");
        write_file(path, chart.render());
        files.push_back(path);
    };
    const std::string id = b.instrument_id;

    if (!b.returns.empty()) {
        std::vector<double> x, y;
        for (const auto& r : b.returns) {
            x.push_back(decimal_year(r.date));
            y.push_back(r.ret);
        }
        SvgChart c(id + ": log returns", "year", "return (%)");
        c.line(x, y);
        save("returns", c);
    }
    for (const auto& d : b.density) {
        const auto& curve = d.curve;
        if (curve.kind == DensityKind::histogram) {
            SvgChart c(id + ": " + d.name + " vs normal", "return (%)", "density");
            c.bars(curve.bin_edges, curve.empirical);
            c.line(curve.grid, curve.reference, "#d62728");
            save(d.name, c);
        } else {
            SvgChart c(id + ": kernel density vs " + curve.reference_label, "return (%)", "density");
            c.line(curve.grid, curve.empirical);
            c.line(curve.grid, curve.reference, "#d62728");
            save("kde", c);
        }
    }
    for (const auto& q : b.qq) {
        std::vector<double> x, y;
        for (const auto& p : q.qq.points) {
            x.push_back(p.theoretical);
            y.push_back(p.sample);
        }
        SvgChart c(id + ": QQ plot vs " + q.qq.reference.describe(), "theoretical quantile", "sample quantile");
        c.points(x, y);
        c.identity_line();
        save("qq_" + q.name, c);
    }
    for (const auto& a : b.acf) {
        std::vector<double> lags;
        for (std::size_t k = 1; k <= a.rho.size(); ++k) lags.push_back(static_cast<double>(k));
        SvgChart c(id + ": ACF (" + std::string(to_string(a.transform)) + ")", "lag", "autocorrelation");
        c.stems(lags, a.rho);
        c.hline(0.0, "#444", false);
        c.hline(a.band_halfwidth, "#2ca02c");
        c.hline(-a.band_halfwidth, "#2ca02c");
        save("acf_" + std::string(to_string(a.transform)), c);
    }
    if (!b.mcleod_li.empty()) {
        std::vector<double> x, y;
        for (const auto& m : b.mcleod_li) {
            x.push_back(static_cast<double>(m.lag));
            y.push_back(m.result.p_value);
        }
        SvgChart c(id + ": McLeod-Li p-values", "lag", "p-value");
        c.points(x, y);
        c.hline(0.05, "#d62728");
        c.hline(0.0, "#444", false);
        save("mcleod_li", c);
    }
    if (!b.lag_pairs.empty()) {
        std::vector<double> x, y;
        for (const auto& p : b.lag_pairs) {
            x.push_back(p.previous);
            y.push_back(p.current);
        }
        SvgChart c(id + ": lag plot", "r(t-1) (%)", "r(t) (%)");
        c.points(x, y);
        save("lag_plot", c);
    }
    if (b.garch) {
        std::vector<double> x, vol, ret, up, lo;
        const auto& f = b.garch->fit;
        for (std::size_t t = 0; t < f.cond_variance.size() && t < b.returns.size(); ++t) {
            x.push_back(decimal_year(b.returns[t].date));
            vol.push_back(std::sqrt(f.cond_variance[t]));
        }
        SvgChart v(id + ": GARCH(1,1) conditional volatility", "year", "sigma_t (%)");
        v.line(x, vol);
        save("garch_volatility", v);

        std::vector<double> bx;
        for (const auto& p : b.garch->bands) {
            bx.push_back(decimal_year(p.date));
            ret.push_back(p.normalized_return);
            up.push_back(p.upper);
            lo.push_back(p.lower);
        }
        SvgChart bands(id + ": normalized returns with +-" + fmt(b.garch->band_k) + " sigma_t", "year",
                       "normalized return");
        bands.line(bx, ret, "#7f7f7f");
        bands.line(bx, up, "#d62728");
        bands.line(bx, lo, "#d62728");
        save("volatility_bands", bands);
    }
    return files;
}

}  // namespace

EmitFormat parse_emit_format(std::string_view text) {
    if (text == "json") return EmitFormat::json;
    if (text == "csv" || text == "csv-dir") return EmitFormat::csv;
    if (text == "svg" || text == "svg-dir") return EmitFormat::svg;
    throw DomainError("unknown output format '" + std::string(text) + "'");
}

std::vector<fs::path> emit(const ReportBundle& bundle, EmitFormat format, const fs::path& out_dir) {
    switch (format) {
        case EmitFormat::json: {
            ensure_dir(out_dir);
            const auto path = out_dir / "report.json";
            write_file(path, report_json_string(bundle));
            return {path};
        }
        case EmitFormat::csv: return emit_csv(bundle, out_dir / "csv");
        case EmitFormat::svg: return emit_svg(bundle, out_dir / "svg");
    }
    return {};
}

}  // namespace stylized
