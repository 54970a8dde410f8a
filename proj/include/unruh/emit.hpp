#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "unruh/sweep.hpp"

namespace unruh {

enum class Format { csv, json };

Format parse_format(std::string_view text);

inline constexpr std::string_view kVersion = "0.1.0";

/// Header plus one line per row; floats with 17 significant digits.
std::string to_csv(const SweepResult& result);

/// Same rows as to_csv under a metadata block echoing the spec.
std::string to_json(const SweepResult& result);

/// Parses the output of to_json back into a result.
SweepResult result_from_json(std::string_view text);

nlohmann::ordered_json spec_to_json(const SweepSpec& spec);

/// Accepts either an explicit "grid" array or a
/// "range": {"start", "stop", "count", "spacing": "linear" | "log"} block.
SweepSpec spec_from_json(const nlohmann::json& doc);

/// Writes a JSON document with every float printed as %.17g.
std::string dump_json(const nlohmann::ordered_json& doc);

/// Writes to_csv/to_json output to path. Throws std::runtime_error on I/O failure.
void emit(const SweepResult& result, Format format, const std::filesystem::path& path);

/// %.17g, with "nan"/"inf" spelled out.
std::string format_double(double value);

}  // namespace unruh
