#include "alchemy/session.hpp"

#include <string>

namespace alchemy {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Session::Session(EngineConfig cfg) : active_(std::move(cfg)) {
    active_.validate();
    requested_ = active_;
    telemetry_.level = progress(progress_).level;
}

void Session::submit(Command cmd) {
    std::lock_guard lock(mutex_);
    std::visit(Overloaded{
                   [&](const command::SetConfig& c) {
                       c.config.validate();
                       if (c.config.frame_width != requested_.frame_width ||
                           c.config.frame_height != requested_.frame_height) {
                           throw std::invalid_argument("frame dimensions cannot change during a session");
                       }
                       requested_ = c.config;
                   },
                   [&](const command::SetColorRange& c) {
                       if (c.range && !c.range->valid()) throw std::invalid_argument("colour range has min > max");
                       requested_range_ = c.range;
                   },
                   [&](const command::SetOverride& c) {
                       if (c.level && (*c.level < kMinLevel || *c.level > kMaxLevel)) {
                           throw std::invalid_argument("override level must be in [1, 4]");
                       }
                       requested_.level_override = c.level;
                   },
               },
               cmd);
    pending_.push_back(std::move(cmd));
}

void Session::apply_pending_locked() {
    for (auto& cmd : pending_) {
        std::visit(Overloaded{
                       [&](command::SetConfig& c) { active_ = std::move(c.config); },
                       [&](command::SetColorRange& c) { range_ = c.range; },
                       [&](command::SetOverride& c) { active_.level_override = c.level; },
                   },
                   cmd);
    }
    pending_.clear();
}

ColorRange Session::pick(int x, int y) {
    std::lock_guard lock(mutex_);
    if (!mirrored_) throw NoFrameYet("no frame has been rendered yet");
    const ColorRange range = pick_color(*mirrored_, x, y, requested_.tracking_tolerance);
    requested_range_ = range;
    pending_.push_back(command::SetColorRange{range});
    return range;
}

Progress Session::audio_tick(const PitchReading& reading, std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    progress_ = stability_step(progress_, reading, now_ms, active_.stability);
    last_reading_ = reading;
    return progress(progress_);
}

FrameResult Session::render(const ArgbMatrix& input, std::int64_t now_ms) {
    EngineConfig cfg;
    std::optional<ColorRange> range;
    Progress prog;
    FrameStamp stamp;
    {
        std::lock_guard lock(mutex_);
        apply_pending_locked();
        cfg = active_;
        range = range_;
        prog = apply_override(active_, progress_);
        stamp = FrameStamp{frame_index_, now_ms, last_reading_};
    }

    FrameResult result = process_frame(input, prog, range, cfg, stamp);

    {
        std::lock_guard lock(mutex_);
        ++frame_index_;
        mirrored_ = std::make_shared<const ArgbMatrix>(result.mirrored);
        published_.generation = frame_index_;
        published_.frame = std::make_shared<const ArgbMatrix>(result.frame);
        published_.snapshot = result.snapshot;
        telemetry_ = result.snapshot;
    }
    frame_cv_.notify_all();
    return result;
}

EngineConfig Session::config() const {
    std::lock_guard lock(mutex_);
    return requested_;
}

EngineConfig Session::active_config() const {
    std::lock_guard lock(mutex_);
    return active_;
}

std::optional<ColorRange> Session::color_range() const {
    std::lock_guard lock(mutex_);
    return requested_range_;
}

ProgressState Session::progress_state() const {
    std::lock_guard lock(mutex_);
    return progress_;
}

TelemetrySnapshot Session::telemetry() const {
    std::lock_guard lock(mutex_);
    TelemetrySnapshot snap = telemetry_;
    const Progress p = apply_override(active_, progress_);
    snap.level = p.level;
    snap.percent = p.percent;
    snap.pitch_hz = last_reading_.pitch_hz;
    snap.amplitude_rms = last_reading_.amplitude_rms;
    return snap;
}

std::optional<PublishedFrame> Session::latest_frame() const {
    std::lock_guard lock(mutex_);
    if (!published_.frame) return std::nullopt;
    return published_;
}

std::optional<PublishedFrame> Session::wait_for_frame(std::uint64_t after_generation,
                                                      std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    const bool ready = frame_cv_.wait_for(lock, timeout, [&] {
        return closed_ || (published_.frame && published_.generation > after_generation);
    });
    if (!ready || closed_ || !published_.frame) return std::nullopt;
    return published_;
}

void Session::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    frame_cv_.notify_all();
}

bool Session::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

}  // namespace alchemy
