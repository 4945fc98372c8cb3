#include "alchemy/engine.hpp"

#include <stdexcept>
#include <string>

#include "alchemy/geometry.hpp"

namespace alchemy {

void EngineConfig::validate() const {
    if (frame_width <= 0 || frame_height <= 0) throw std::invalid_argument("frame dimensions must be positive");
    if (!(target_fps > 0.0)) throw std::invalid_argument("target_fps must be positive");
    if (tracking_tolerance < 0 || tracking_tolerance > 255) {
        throw std::invalid_argument("tracking_tolerance must be in [0, 255]");
    }
    if (level_override && (*level_override < kMinLevel || *level_override > kMaxLevel)) {
        throw std::invalid_argument("level_override must be in [1, 4]");
    }
    stability.validate();
    noise.validate();
    star.validate();
}

std::string_view stage_name(Stage s) {
    switch (s) {
        case Stage::MirrorOnly: return "mirror";
        case Stage::Burn: return "burn";
        case Stage::Dissolve: return "dissolve";
        case Stage::SolventStar: return "solvent-star";
    }
    return "unknown";
}

Stage route(int level) {
    switch (level) {
        case 1: return Stage::MirrorOnly;
        case 2: return Stage::Burn;
        case 3: return Stage::Dissolve;
        case 4: return Stage::SolventStar;
        default: throw std::out_of_range("route: level " + std::to_string(level) + " outside [1, 4]");
    }
}

FrameResult process_frame(const ArgbMatrix& input, Progress progress, const std::optional<ColorRange>& range,
                          const EngineConfig& cfg, const FrameStamp& stamp) {
    if (input.width() != cfg.frame_width || input.height() != cfg.frame_height) {
        throw DimensionMismatch("process_frame: input " + std::to_string(input.width()) + "x" +
                                std::to_string(input.height()) + " but config expects " +
                                std::to_string(cfg.frame_width) + "x" + std::to_string(cfg.frame_height));
    }
    const Stage stage = route(progress.level);
    const double percent = progress.percent;

    FrameResult result;
    result.mirrored = mirror_y(input);
    const ArgbMatrix& mirrored = result.mirrored;

    std::optional<BoundingBox> bbox;
    if (range) bbox = find_bounds(mirrored, *range);

    switch (stage) {
        case Stage::MirrorOnly:
            result.frame = tint_progress(mirrored, percent);
            break;
        case Stage::Burn:
            result.frame = tint_progress(burn_stage(mirrored, percent, cfg.noise, cfg.star), percent);
            break;
        case Stage::Dissolve:
            result.frame = tint_progress(dissolve(mirrored, percent / 100.0), percent);
            break;
        case Stage::SolventStar: {
            // No red tint here: the progress display covers levels 1-3 only.
            auto solvent = solvent_split(mirrored);
            result.frame = star_composite(solvent.arg, fft_star(mirrored, cfg.star), bbox, cfg.star);
            break;
        }
    }

    auto& snap = result.snapshot;
    snap.frame_index = stamp.frame_index;
    snap.level = progress.level;
    snap.percent = percent;
    snap.bbox = bbox;
    snap.pitch_hz = stamp.reading.pitch_hz;
    snap.amplitude_rms = stamp.reading.amplitude_rms;
    snap.timestamp_ms = stamp.timestamp_ms;
    return result;
}

Progress apply_override(const EngineConfig& cfg, const ProgressState& state) {
    if (!cfg.level_override) return progress(state);
    const int level = *cfg.level_override;
    return {level, level < kMaxLevel ? state.percent : 100.0};
}

}  // namespace alchemy
