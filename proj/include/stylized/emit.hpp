#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "stylized/report.hpp"

namespace stylized {

enum class EmitFormat { json, csv, svg };

[[nodiscard]] EmitFormat parse_emit_format(std::string_view text);

/// Writes the bundle under `out_dir`:
///   json -> report.json
///   csv  -> csv/<table>.csv, one file per table or curve, headers prefixed by the producing operation
///   svg  -> svg/<figure>.svg, one static figure per analysis
/// Creates directories as needed and returns the written paths. Throws Error on I/O failure.
std::vector<std::filesystem::path> emit(const ReportBundle& bundle, EmitFormat format,
                                        const std::filesystem::path& out_dir);

}  // namespace stylized
