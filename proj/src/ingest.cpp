#include "stylized/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include "stylized/errors.hpp"

namespace stylized {

namespace {

std::vector<std::string> split_csv_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& column) {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    if (all_digits(column)) {
        const auto idx = static_cast<std::size_t>(std::stoul(column));
        if (idx < header.size()) return idx;
    }
    throw IngestError("column '" + column + "' not found in header", 1);
}

std::optional<double> parse_price(const std::string& text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
    return value;
}

struct Row {
    Date date;
    double price;
    std::size_t line;
};

}  // namespace

Date parse_date(const std::string& text, const std::string& format) {
    if (format == "%Y-%m-%d") return parse_iso_date(text);
    std::tm tm{};
    std::istringstream in(text);
    in >> std::get_time(&tm, format.c_str());
    if (in.fail()) throw DomainError("date '" + text + "' does not match format '" + format + "'");
    in >> std::ws;
    if (!in.eof()) throw DomainError("trailing characters after date '" + text + "'");
    using namespace std::chrono;
    const year_month_day ymd{year{tm.tm_year + 1900}, month{static_cast<unsigned>(tm.tm_mon + 1)},
                             day{static_cast<unsigned>(tm.tm_mday)}};
    if (!ymd.ok()) throw DomainError("invalid calendar date '" + text + "'");
    return sys_days{ymd};
}

PriceSeries ingest_stream(std::istream& in, const IngestSpec& spec, std::string instrument_id) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        header = split_csv_line(line, spec.delimiter);
        for (auto& h : header) h = trim(h);
        break;
    }
    if (header.empty()) throw IngestError("file is empty or has no header row", 0);
    const std::size_t date_idx = resolve_column(header, spec.date_column);
    const std::size_t price_idx = resolve_column(header, spec.price_column);

    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line, spec.delimiter);
        if (fields.size() <= std::max(date_idx, price_idx)) {
            throw IngestError("expected at least " + std::to_string(std::max(date_idx, price_idx) + 1) + " fields",
                              line_no);
        }
        Row row{};
        row.line = line_no;
        try {
            row.date = parse_date(trim(fields[date_idx]), spec.date_format);
        } catch (const DomainError& e) {
            throw IngestError(e.what(), line_no);
        }
        const auto price = parse_price(trim(fields[price_idx]));
        if (!price || !std::isfinite(*price)) {
            throw IngestError("unparseable price '" + trim(fields[price_idx]) + "'", line_no);
        }
        if (*price <= 0.0) throw IngestError("price must be positive, got " + trim(fields[price_idx]), line_no);
        row.price = *price;
        rows.push_back(row);
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    std::vector<PricePoint> points;
    points.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!points.empty() && points.back().date == rows[i].date) {
            if (spec.on_duplicate == DuplicatePolicy::error) {
                throw IngestError("duplicate date " + format_iso_date(rows[i].date), rows[i].line);
            }
            points.back().price = rows[i].price;  // stable sort keeps file order within a date
            continue;
        }
        points.push_back({rows[i].date, rows[i].price});
    }
    return PriceSeries(std::move(instrument_id), std::move(points));
}

PriceSeries ingest(const IngestSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw IngestError("cannot open '" + spec.path.string() + "'", 0);
    return ingest_stream(in, spec, spec.path.stem().string());
}

}  // namespace stylized
