#include "alchemy/gateway/control_api.hpp"

#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/json_codec.hpp"

namespace alchemy::gateway {

namespace {

json parse_body(std::string_view body) {
    if (body.empty()) throw ConfigError("request body is empty");
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("request body is not valid JSON: ") + e.what());
    }
}

}  // namespace

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
    return {status, json{{"error", {{"code", code}, {"message", message}}}}};
}

ControlApi::ControlApi(Session& session, std::shared_ptr<Recorder> recorder)
    : session_(session), recorder_(std::move(recorder)) {}

ApiResponse ControlApi::handle(std::string_view method, std::string_view target, std::string_view body) {
    const std::string_view path = target.substr(0, target.find('?'));
    const bool get = method == "GET";
    const bool post = method == "POST";

    try {
        if (path == "/state") {
            if (!get) return error_response(405, "method_not_allowed", "use GET /state");
            return {200, to_json(session_.telemetry())};
        }
        if (path == "/config") {
            if (get) return {200, to_json(session_.config())};
            if (post) return post_config(body);
            return error_response(405, "method_not_allowed", "use GET or POST /config");
        }
        if (path == "/pick") {
            if (!post) return error_response(405, "method_not_allowed", "use POST /pick");
            return post_pick(body);
        }
        if (path == "/override") {
            if (!post) return error_response(405, "method_not_allowed", "use POST /override");
            return post_override(body);
        }
        if (path == "/record/stop") {
            if (!post) return error_response(405, "method_not_allowed", "use POST /record/stop");
            return stop_recording();
        }
        return error_response(404, "not_found", "no such endpoint: " + std::string(path));
    } catch (const ConfigError& e) {
        return error_response(400, "bad_request", e.what());
    } catch (const std::invalid_argument& e) {
        return error_response(400, "bad_request", e.what());
    } catch (const std::out_of_range& e) {
        return error_response(400, "out_of_range", e.what());
    } catch (const json::exception& e) {
        return error_response(400, "bad_request", e.what());
    } catch (const GatewayError& e) {
        return error_response(500, "internal", e.what());
    }
}

ApiResponse ControlApi::post_config(std::string_view body) {
    const EngineConfig next = config_from_json(parse_body(body), session_.config());
    session_.submit(command::SetConfig{next});
    return {200, to_json(next)};
}

ApiResponse ControlApi::post_pick(std::string_view body) {
    const json j = parse_body(body);
    if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j["x"].is_number_integer() ||
        !j["y"].is_number_integer() || j.size() != 2) {
        return error_response(400, "bad_request", "expected {\"x\": int, \"y\": int}");
    }
    try {
        const ColorRange range = session_.pick(j["x"].get<int>(), j["y"].get<int>());
        return {200, json{{"range", to_json(range)}}};
    } catch (const NoFrameYet& e) {
        return error_response(409, "no_frame", e.what());
    }
}

ApiResponse ControlApi::post_override(std::string_view body) {
    const json j = parse_body(body);
    if (!j.is_object() || !j.contains("level") || j.size() != 1) {
        return error_response(400, "bad_request", "expected {\"level\": 1-4 | null}");
    }
    std::optional<int> level;
    if (!j["level"].is_null()) {
        if (!j["level"].is_number_integer()) return error_response(400, "bad_request", "level must be an integer");
        level = j["level"].get<int>();
    }
    session_.submit(command::SetOverride{level});
    return {200, json{{"level_override", level ? json(*level) : json(nullptr)}}};
}

ApiResponse ControlApi::stop_recording() {
    if (!recorder_) return error_response(404, "not_recording", "this session has no recorder");
    try {
        return {200, to_json(recorder_->stop())};
    } catch (const AlreadyStopped& e) {
        return error_response(409, "already_stopped", e.what());
    }
}

}  // namespace alchemy::gateway
