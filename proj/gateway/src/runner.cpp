#include "alchemy/gateway/runner.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "alchemy/gateway/errors.hpp"

namespace alchemy::gateway {

namespace {

using Clock = std::chrono::steady_clock;

class AudioClock {
public:
    AudioClock(Session& session, const AudioClip* audio) : session_(session), audio_(audio) {}

    /// Runs every tick scheduled at or before `until_ms`.
    void advance_to(std::int64_t until_ms) {
        if (!audio_) return;
        while (next_ms_ <= until_ms && !exhausted()) {
            tick(next_ms_);
            next_ms_ += session_.active_config().stability.interval_ms;
        }
    }

    bool exhausted() const { return !audio_ || next_ms_ > audio_->duration_ms(); }
    std::int64_t next_ms() const { return next_ms_; }
    std::uint64_t ticks() const { return ticks_; }

    void tick(std::int64_t t_ms) {
        auto window = audio_->window_at(t_ms);
        if (!window) return;  // not enough history yet
        const double silence = session_.active_config().stability.silence_rms;
        session_.audio_tick(estimate_pitch_amplitude(*window, silence), t_ms);
        ++ticks_;
    }

    void skip_to_next() { next_ms_ += session_.active_config().stability.interval_ms; }

private:
    Session& session_;
    const AudioClip* audio_;
    std::int64_t next_ms_ = 0;
    std::uint64_t ticks_ = 0;
};

bool cancelled(const RunOptions& opts) { return opts.cancel && opts.cancel->load(); }

}  // namespace

RunSummary run_session(Session& session, FrameSource& source, const AudioClip* audio,
                       const std::shared_ptr<Recorder>& recorder, const RunOptions& opts) {
    const EngineConfig cfg = session.active_config();
    if (source.width() != cfg.frame_width || source.height() != cfg.frame_height) {
        throw SourceError("source frames are " + std::to_string(source.width()) + "x" +
                          std::to_string(source.height()) + " but the config expects " +
                          std::to_string(cfg.frame_width) + "x" + std::to_string(cfg.frame_height));
    }
    const double fps = cfg.target_fps;

    RunSummary summary;
    AudioClock audio_clock(session, audio);
    int last_level = session.telemetry().level;
    const auto start = Clock::now();

    std::atomic<bool> audio_done{false};
    std::thread audio_thread;
    if (!opts.headless && audio) {
        audio_thread = std::thread([&] {
            while (!audio_done && !audio_clock.exhausted() && !cancelled(opts)) {
                const auto due = start + std::chrono::milliseconds(audio_clock.next_ms());
                std::this_thread::sleep_until(due);
                audio_clock.tick(audio_clock.next_ms());
                audio_clock.skip_to_next();
            }
        });
    }

    try {
        for (std::uint64_t i = 0;; ++i) {
            if (cancelled(opts)) break;
            if (opts.max_frames && i >= *opts.max_frames) break;
            const auto t_ms = static_cast<std::int64_t>(std::llround(static_cast<double>(i) * 1000.0 / fps));
            if (opts.headless) {
                if (audio && t_ms > audio->duration_ms()) break;
                audio_clock.advance_to(t_ms);
            } else {
                std::this_thread::sleep_until(start + std::chrono::milliseconds(t_ms));
            }

            auto frame = source.next();
            if (!frame) break;
            FrameResult result = session.render(*frame, t_ms);
            ++summary.frames;

            if (recorder && !recorder->stopped()) {
                try {
                    recorder->write(result.frame);
                } catch (const WriteAfterStop&) {
                    // stopped from the control plane between the check and the write
                }
            }
            if (result.snapshot.level != last_level) {
                summary.level_changes.push_back({result.snapshot.frame_index, t_ms, result.snapshot.level});
                last_level = result.snapshot.level;
            }
            if (opts.on_frame) opts.on_frame(result);
        }
    } catch (...) {
        audio_done = true;
        if (audio_thread.joinable()) audio_thread.join();
        throw;
    }
    audio_done = true;
    if (audio_thread.joinable()) audio_thread.join();

    summary.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    summary.render_fps = summary.wall_seconds > 0.0 ? summary.frames / summary.wall_seconds : 0.0;
    summary.audio_ticks = audio_clock.ticks();
    summary.final_progress = apply_override(session.active_config(), session.progress_state());
    if (recorder) {
        summary.manifest = recorder->stopped() ? recorder->manifest() : recorder->stop();
    }
    return summary;
}

}  // namespace alchemy::gateway
