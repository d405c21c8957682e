#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "stylized/series.hpp"

namespace stylized {

enum class DuplicatePolicy { error, keep_last };

/// Where and how to read a price file. Columns are header names, or 0-based
/// indices when the text is all digits.
struct IngestSpec {
    std::filesystem::path path;
    std::string date_column = "date";
    std::string price_column = "adj_close";
    /// strftime-style pattern (as understood by std::get_time).
    std::string date_format = "%Y-%m-%d";
    DuplicatePolicy on_duplicate = DuplicatePolicy::error;
    char delimiter = ',';
};

/// Reads a headered CSV price file, sorts rows by date and validates the series.
/// Malformed rows raise IngestError carrying the 1-based line number.
[[nodiscard]] PriceSeries ingest(const IngestSpec& spec);

/// Same as ingest() but from an already-open stream.
[[nodiscard]] PriceSeries ingest_stream(std::istream& in, const IngestSpec& spec, std::string instrument_id);

/// Parses `text` with a strftime-style pattern; throws DomainError if it does not match
/// or names an invalid calendar day.
[[nodiscard]] Date parse_date(const std::string& text, const std::string& format);

}  // namespace stylized
