#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "alchemy/gateway/frame_source.hpp"
#include "alchemy/gateway/recorder.hpp"
#include "alchemy/gateway/wav.hpp"
#include "alchemy/session.hpp"

namespace alchemy::gateway {

struct RunOptions {
    /// Simulated clock, no pacing: audio ticks are interleaved with frames
    /// by timestamp on the calling thread. Otherwise frames are paced to
    /// wall time and audio ticks on a separate thread.
    bool headless = true;
    std::optional<std::uint64_t> max_frames;
    std::function<void(const FrameResult&)> on_frame;
    const std::atomic<bool>* cancel = nullptr;
};

struct LevelChange {
    std::uint64_t frame_index = 0;
    std::int64_t timestamp_ms = 0;
    int level = kMinLevel;
};

struct RunSummary {
    std::uint64_t frames = 0;
    std::uint64_t audio_ticks = 0;
    Progress final_progress;
    std::vector<LevelChange> level_changes;
    double wall_seconds = 0.0;
    double render_fps = 0.0;  ///< frames / wall_seconds
    std::optional<RecordingManifest> manifest;
};

/// Drives `session` from `source` until the source ends, `max_frames` is
/// reached, the audio clip runs out (headless only) or `cancel` is set.
/// Frames go to `recorder` while it is recording; the recording is stopped
/// at the end unless someone already stopped it.
RunSummary run_session(Session& session, FrameSource& source, const AudioClip* audio,
                       const std::shared_ptr<Recorder>& recorder, const RunOptions& opts);

}  // namespace alchemy::gateway
