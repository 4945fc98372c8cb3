#include "alchemy/gateway/json_codec.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "alchemy/gateway/errors.hpp"

namespace alchemy::gateway {

namespace {

using Setter = std::function<void(const json&, const std::string&)>;

void overlay(const json& j, const std::string& where, const std::map<std::string, Setter>& fields) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        const std::string path = where.empty() ? key : where + "." + key;
        auto it = fields.find(key);
        if (it == fields.end()) throw ConfigError("unknown config key '" + path + "'");
        it->second(value, path);
    }
}

double as_real(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + " must be a number");
    return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + " must be an integer");
    return v.get<std::int64_t>();
}

std::uint64_t as_uint(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) throw ConfigError(path + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

int as_int32(const json& v, const std::string& path) {
    const auto n = as_int(v, path);
    if (n < INT32_MIN || n > INT32_MAX) throw ConfigError(path + " is out of range");
    return static_cast<int>(n);
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const EngineConfig& cfg) {
    return json{
        {"frame_width", cfg.frame_width},
        {"frame_height", cfg.frame_height},
        {"target_fps", cfg.target_fps},
        {"stability",
         {
             {"interval_ms", cfg.stability.interval_ms},
             {"rel_pitch_tol", cfg.stability.rel_pitch_tol},
             {"rel_amp_tol", cfg.stability.rel_amp_tol},
             {"level_durations_ms", cfg.stability.level_durations_ms},
             {"silence_rms", cfg.stability.silence_rms},
         }},
        {"tracking_tolerance", cfg.tracking_tolerance},
        {"noise",
         {
             {"seed", cfg.noise.seed},
             {"octaves", cfg.noise.octaves},
             {"persistence", cfg.noise.persistence},
             {"base_cell_size", cfg.noise.base_cell_size},
         }},
        {"star",
         {
             {"gain", cfg.star.gain},
             {"min_scale", cfg.star.min_scale},
             {"max_scale", cfg.star.max_scale},
         }},
        {"level_override", optional_json(cfg.level_override)},
    };
}

json to_json(const BoundingBox& box) {
    return json{
        {"min_x", box.min_x},       {"min_y", box.min_y},       {"max_x", box.max_x}, {"max_y", box.max_y},
        {"center_x", box.center_x}, {"center_y", box.center_y}, {"width", box.width}, {"height", box.height},
    };
}

json to_json(const TelemetrySnapshot& snap) {
    return json{
        {"frame_index", snap.frame_index},
        {"level", snap.level},
        {"percent", snap.percent},
        {"bbox", snap.bbox ? to_json(*snap.bbox) : json(nullptr)},
        {"pitch_hz", optional_json(snap.pitch_hz)},
        {"amplitude_rms", snap.amplitude_rms},
        {"timestamp_ms", snap.timestamp_ms},
    };
}

json to_json(const ColorRange& r) {
    return json{
        {"min_r", r.min_r}, {"min_g", r.min_g}, {"min_b", r.min_b},
        {"max_r", r.max_r}, {"max_g", r.max_g}, {"max_b", r.max_b},
    };
}

json to_json(const RecordingManifest& m) {
    return json{
        {"session_id", m.session_id}, {"frame_count", m.frame_count}, {"fps", m.fps},
        {"width", m.width},           {"height", m.height},           {"started_at", m.started_at},
        {"stopped_at", optional_json(m.stopped_at)},
    };
}

EngineConfig config_from_json(const json& j, const EngineConfig& base) {
    EngineConfig cfg = base;
    auto& st = cfg.stability;
    auto& nz = cfg.noise;
    auto& sp = cfg.star;

    const std::map<std::string, Setter> stability_fields{
        {"interval_ms", [&](const json& v, const std::string& p) { st.interval_ms = as_int(v, p); }},
        {"rel_pitch_tol", [&](const json& v, const std::string& p) { st.rel_pitch_tol = as_real(v, p); }},
        {"rel_amp_tol", [&](const json& v, const std::string& p) { st.rel_amp_tol = as_real(v, p); }},
        {"silence_rms", [&](const json& v, const std::string& p) { st.silence_rms = as_real(v, p); }},
        {"level_durations_ms",
         [&](const json& v, const std::string& p) {
             if (!v.is_array() || v.size() != 3) throw ConfigError(p + " must be an array of exactly 3 integers");
             for (std::size_t i = 0; i < 3; ++i) {
                 st.level_durations_ms[i] = as_int(v[i], p + "[" + std::to_string(i) + "]");
             }
         }},
    };
    const std::map<std::string, Setter> noise_fields{
        {"seed", [&](const json& v, const std::string& p) { nz.seed = as_uint(v, p); }},
        {"octaves", [&](const json& v, const std::string& p) { nz.octaves = as_int32(v, p); }},
        {"persistence", [&](const json& v, const std::string& p) { nz.persistence = as_real(v, p); }},
        {"base_cell_size", [&](const json& v, const std::string& p) { nz.base_cell_size = as_int32(v, p); }},
    };
    const std::map<std::string, Setter> star_fields{
        {"gain", [&](const json& v, const std::string& p) { sp.gain = as_real(v, p); }},
        {"min_scale", [&](const json& v, const std::string& p) { sp.min_scale = as_real(v, p); }},
        {"max_scale", [&](const json& v, const std::string& p) { sp.max_scale = as_real(v, p); }},
    };
    const std::map<std::string, Setter> top{
        {"frame_width", [&](const json& v, const std::string& p) { cfg.frame_width = as_int32(v, p); }},
        {"frame_height", [&](const json& v, const std::string& p) { cfg.frame_height = as_int32(v, p); }},
        {"target_fps", [&](const json& v, const std::string& p) { cfg.target_fps = as_real(v, p); }},
        {"tracking_tolerance", [&](const json& v, const std::string& p) { cfg.tracking_tolerance = as_int32(v, p); }},
        {"stability", [&](const json& v, const std::string& p) { overlay(v, p, stability_fields); }},
        {"noise", [&](const json& v, const std::string& p) { overlay(v, p, noise_fields); }},
        {"star", [&](const json& v, const std::string& p) { overlay(v, p, star_fields); }},
        {"level_override",
         [&](const json& v, const std::string& p) {
             if (v.is_null()) {
                 cfg.level_override.reset();
             } else {
                 cfg.level_override = as_int32(v, p);
             }
         }},
    };
    overlay(j, "", top);

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RecordingManifest manifest_from_json(const json& j) {
    try {
        RecordingManifest m;
        m.session_id = j.at("session_id").get<std::string>();
        m.frame_count = j.at("frame_count").get<std::uint64_t>();
        m.fps = j.at("fps").get<double>();
        m.width = j.at("width").get<int>();
        m.height = j.at("height").get<int>();
        m.started_at = j.at("started_at").get<std::string>();
        if (!j.at("stopped_at").is_null()) m.stopped_at = j.at("stopped_at").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
}

EngineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void save_config(const std::filesystem::path& path, const EngineConfig& cfg) {
    std::ofstream out(path);
    out << to_json(cfg).dump(2) << '\n';
    if (!out) throw ConfigError("cannot write config file " + path.string());
}

}  // namespace alchemy::gateway
