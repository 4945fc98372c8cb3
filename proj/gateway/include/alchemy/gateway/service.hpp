#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "alchemy/gateway/control_api.hpp"
#include "alchemy/session.hpp"

namespace alchemy::gateway {

struct ServiceOptions {
    std::string address = "127.0.0.1";
    std::uint16_t port = 8080;  ///< 0 picks an ephemeral port
};

/// HTTP control plane plus two WebSocket feeds on one port:
///   /frames     binary AMF1 frames, latest-wins
///   /telemetry  one JSON snapshot per rendered frame
/// Each connection runs on its own thread; a slow client only ever misses
/// frames, the video thread never waits on it.
class Service {
public:
    Service(Session& session, std::shared_ptr<Recorder> recorder, ServiceOptions opts);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds and starts accepting. Throws PortInUse when the port is taken.
    void start();
    void stop();

    std::uint16_t port() const { return bound_port_; }

private:
    struct Impl;

    Session& session_;
    ControlApi api_;
    ServiceOptions opts_;
    std::unique_ptr<Impl> impl_;
    std::uint16_t bound_port_ = 0;
};

}  // namespace alchemy::gateway
