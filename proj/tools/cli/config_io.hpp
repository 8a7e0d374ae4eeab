#pragma once

#include <filesystem>

#include <json.hpp>

#include "phasesync/compare.hpp"
#include "phasesync/engine.hpp"

namespace phasesync::cli {

/// A config file's experiment plus the parameters it gives each actuation method.
struct ParsedConfig {
  ExperimentConfig config;
  MethodSet methods;
};

/// Strict JSON → config mapping. Unknown keys, wrong types and invariant
/// violations all throw InvalidConfig with a dotted field path.
ParsedConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a config file. An unreadable or malformed file throws
/// InvalidConfig with field "config".
ParsedConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace phasesync::cli
