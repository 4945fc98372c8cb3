#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "alchemy/gateway/recorder.hpp"
#include "alchemy/session.hpp"

namespace alchemy::gateway {

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

/// Transport-independent HTTP control surface:
///   GET  /state           telemetry snapshot
///   GET  /config          engine config
///   POST /config          partial or full config overlay
///   POST /pick {x, y}     sample the latest mirrored frame
///   POST /override {level: 1-4 | null}
///   POST /record/stop     finalise the recording
/// Errors carry {"error": {"code", "message"}}.
class ControlApi {
public:
    ControlApi(Session& session, std::shared_ptr<Recorder> recorder = nullptr);

    ApiResponse handle(std::string_view method, std::string_view target, std::string_view body);

private:
    ApiResponse post_config(std::string_view body);
    ApiResponse post_pick(std::string_view body);
    ApiResponse post_override(std::string_view body);
    ApiResponse stop_recording();

    Session& session_;
    std::shared_ptr<Recorder> recorder_;
};

ApiResponse error_response(int status, std::string_view code, std::string_view message);

}  // namespace alchemy::gateway
