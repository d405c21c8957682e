#pragma once

#include <string>

#include <json.hpp>

#include "stylized/report.hpp"

namespace stylized {

/// Self-describing JSON document with a top-level `schema_version`.
[[nodiscard]] nlohmann::json report_to_json(const ReportBundle& bundle);

/// Inverse of report_to_json. Throws Error on a schema mismatch.
[[nodiscard]] ReportBundle report_from_json(const nlohmann::json& document);

/// Pretty-printed document with a trailing newline.
[[nodiscard]] std::string report_json_string(const ReportBundle& bundle);

// Per-type conversions, also used by the CLI for single-analysis output.
[[nodiscard]] nlohmann::json to_json_value(const SummaryStats& s);
[[nodiscard]] nlohmann::json to_json_value(const TestResult& t);
[[nodiscard]] nlohmann::json to_json_value(const AggregationRow& row);
[[nodiscard]] nlohmann::json to_json_value(const AcfResult& a);
[[nodiscard]] nlohmann::json to_json_value(const DensityCurve& d);
[[nodiscard]] nlohmann::json to_json_value(const QQPoints& q);
[[nodiscard]] nlohmann::json to_json_value(const GarchFit& f);
[[nodiscard]] nlohmann::json to_json_value(const LagPair& p);
[[nodiscard]] nlohmann::json to_json_value(const BandPoint& b);

}  // namespace stylized
