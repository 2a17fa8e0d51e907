#pragma once

#include "boldscale/pipeline.hpp"

#include "json.hpp"

#include <string>

namespace boldscale {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";

/// Reads a config object; absent keys keep their defaults, unknown keys and
/// wrongly typed values are Parse errors.
PipelineConfig config_from_json(const Json& json);
Json config_to_json(const PipelineConfig& config);

Json build_report(const PipelineResult& result);

/// Two-space indented JSON with a trailing newline.
std::string dump_report(const Json& report);

/// Parses report text; throws Parse for malformed JSON and SchemaVersion when
/// the major version differs from this build's.
Json load_report(const std::string& text);

/// Throws SchemaVersion unless `version` has this build's major number.
void check_schema_version(const std::string& version);

}  // namespace boldscale
