#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "alchemy/engine.hpp"

namespace alchemy {

class NoFrameYet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace command {
struct SetConfig {
    EngineConfig config;
};
struct SetColorRange {
    std::optional<ColorRange> range;
};
struct SetOverride {
    std::optional<int> level;
};
}  // namespace command

using Command = std::variant<command::SetConfig, command::SetColorRange, command::SetOverride>;

/// A rendered frame as published to readers.
struct PublishedFrame {
    std::uint64_t generation = 0;
    std::shared_ptr<const ArgbMatrix> frame;
    TelemetrySnapshot snapshot;
};

/// Live engine state shared by three roles:
///  - the audio clock, sole caller of audio_tick();
///  - the video clock, sole caller of render();
///  - any number of control-plane readers/writers.
/// Control writes are queued and applied by render() before the next frame,
/// so a frame never sees a half-applied change.
class Session {
public:
    explicit Session(EngineConfig cfg);

    Progress audio_tick(const PitchReading& reading, std::int64_t now_ms);
    FrameResult render(const ArgbMatrix& input, std::int64_t now_ms);

    /// Validates eagerly, applies at the next frame boundary.
    void submit(Command cmd);

    /// Samples the latest mirrored frame at (x, y) with the current tracking
    /// tolerance and queues the resulting range. Throws NoFrameYet before the
    /// first render, std::out_of_range for coordinates outside the frame.
    ColorRange pick(int x, int y);

    /// Config as last requested (queued changes included).
    EngineConfig config() const;
    EngineConfig active_config() const;
    std::optional<ColorRange> color_range() const;
    ProgressState progress_state() const;
    TelemetrySnapshot telemetry() const;
    std::optional<PublishedFrame> latest_frame() const;

    /// Blocks until a frame newer than `after_generation` is published, the
    /// timeout expires, or close() is called.
    std::optional<PublishedFrame> wait_for_frame(std::uint64_t after_generation, std::chrono::milliseconds timeout) const;

    void close();
    bool closed() const;

private:
    void apply_pending_locked();

    mutable std::mutex mutex_;
    mutable std::condition_variable frame_cv_;

    EngineConfig active_;
    EngineConfig requested_;
    std::optional<ColorRange> range_;
    std::optional<ColorRange> requested_range_;
    std::vector<Command> pending_;

    ProgressState progress_;
    PitchReading last_reading_;

    std::shared_ptr<const ArgbMatrix> mirrored_;
    PublishedFrame published_;
    TelemetrySnapshot telemetry_;
    std::uint64_t frame_index_ = 0;
    bool closed_ = false;
};

}  // namespace alchemy
