#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "alchemy/engine.hpp"
#include "alchemy/gateway/recorder.hpp"

namespace alchemy::gateway {

using nlohmann::json;

json to_json(const EngineConfig& cfg);
json to_json(const TelemetrySnapshot& snap);
json to_json(const ColorRange& range);
json to_json(const BoundingBox& box);
json to_json(const RecordingManifest& manifest);

/// Overlays `j` on `base`. Keys mirror EngineConfig field names at every
/// nesting level; unknown keys, wrong types and out-of-range values throw
/// ConfigError. Missing keys keep the value from `base`.
EngineConfig config_from_json(const json& j, const EngineConfig& base = {});

RecordingManifest manifest_from_json(const json& j);

/// Reads and validates a JSON config file. Throws ConfigError.
EngineConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const EngineConfig& cfg);

}  // namespace alchemy::gateway
