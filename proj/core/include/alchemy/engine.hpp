#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "alchemy/audio.hpp"
#include "alchemy/effects.hpp"
#include "alchemy/matrix.hpp"
#include "alchemy/tracking.hpp"

namespace alchemy {

struct EngineConfig {
    int frame_width = 320;
    int frame_height = 240;
    double target_fps = 15.0;
    StabilityConfig stability;
    int tracking_tolerance = 24;
    NoiseParams noise;
    StarParams star;
    std::optional<int> level_override;  ///< operator steering, 1-4

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

struct TelemetrySnapshot {
    std::uint64_t frame_index = 0;
    int level = kMinLevel;
    double percent = 0.0;
    std::optional<BoundingBox> bbox;
    std::optional<double> pitch_hz;
    double amplitude_rms = 0.0;
    std::int64_t timestamp_ms = 0;

    friend bool operator==(const TelemetrySnapshot&, const TelemetrySnapshot&) = default;
};

enum class Stage { MirrorOnly, Burn, Dissolve, SolventStar };

std::string_view stage_name(Stage s);

/// Level 1 mirror, 2 burn, 3 dissolve, 4 solvent + star. Throws std::out_of_range otherwise.
Stage route(int level);

/// Per-frame bookkeeping copied into the snapshot.
struct FrameStamp {
    std::uint64_t frame_index = 0;
    std::int64_t timestamp_ms = 0;
    PitchReading reading;
};

struct FrameResult {
    ArgbMatrix frame;
    ArgbMatrix mirrored;  ///< the mirrored input every stage starts from
    TelemetrySnapshot snapshot;
};

/// Renders one frame for the given progression. Pure: equal arguments give
/// bit-identical output.
FrameResult process_frame(const ArgbMatrix& input, Progress progress, const std::optional<ColorRange>& range,
                          const EngineConfig& cfg, const FrameStamp& stamp = {});

/// Level/percent to render, honouring the operator override when set.
Progress apply_override(const EngineConfig& cfg, const ProgressState& state);

}  // namespace alchemy
