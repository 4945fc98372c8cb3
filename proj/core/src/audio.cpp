#include "alchemy/audio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "alchemy/fft.hpp"

namespace alchemy {

namespace {

constexpr double kAmplitudeFloor = 1e-6;

const std::vector<double>& hann_window() {
    static const std::vector<double> w = [] {
        std::vector<double> v(kAnalysisWindow);
        const double n = static_cast<double>(kAnalysisWindow);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
        }
        return v;
    }();
    return w;
}

bool fluctuates(const PitchReading& prev, const PitchReading& cur, const StabilityConfig& cfg) {
    const double dp = std::abs(*cur.pitch_hz - *prev.pitch_hz) / *prev.pitch_hz;
    const double da = std::abs(cur.amplitude_rms - prev.amplitude_rms) / std::max(prev.amplitude_rms, kAmplitudeFloor);
    return dp > cfg.rel_pitch_tol || da > cfg.rel_amp_tol;
}

}  // namespace

void StabilityConfig::validate() const {
    if (interval_ms <= 0) throw std::invalid_argument("stability.interval_ms must be positive");
    if (!(rel_pitch_tol > 0.0)) throw std::invalid_argument("stability.rel_pitch_tol must be positive");
    if (!(rel_amp_tol > 0.0)) throw std::invalid_argument("stability.rel_amp_tol must be positive");
    if (!(silence_rms > 0.0)) throw std::invalid_argument("stability.silence_rms must be positive");
    for (auto d : level_durations_ms) {
        if (d <= 0) throw std::invalid_argument("stability.level_durations_ms entries must be positive");
    }
}

PitchReading estimate_pitch_amplitude(const AudioFrame& frame, double silence_rms) {
    if (frame.samples.size() < kAnalysisWindow) {
        throw FrameTooShort("audio frame has " + std::to_string(frame.samples.size()) + " samples, need " +
                            std::to_string(kAnalysisWindow));
    }
    if (frame.sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");

    const auto window = frame.samples.last(kAnalysisWindow);
    double sum_sq = 0.0;
    for (float s : window) sum_sq += static_cast<double>(s) * s;
    PitchReading reading;
    reading.amplitude_rms = std::sqrt(sum_sq / static_cast<double>(kAnalysisWindow));
    if (reading.amplitude_rms < silence_rms) return reading;

    const auto& hann = hann_window();
    std::vector<double> tapered(kAnalysisWindow);
    for (std::size_t i = 0; i < kAnalysisWindow; ++i) tapered[i] = window[i] * hann[i];
    const auto spectrum = fft::real_forward(tapered);

    std::size_t peak = 1;
    double peak_mag = 0.0;
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        const double mag = std::abs(spectrum[k]);
        if (mag > peak_mag) {
            peak_mag = mag;
            peak = k;
        }
    }

    double offset = 0.0;
    if (peak > 0 && peak + 1 < spectrum.size()) {
        const double l = std::log(std::abs(spectrum[peak - 1]) + 1e-300);
        const double c = std::log(peak_mag + 1e-300);
        const double r = std::log(std::abs(spectrum[peak + 1]) + 1e-300);
        const double denom = l - 2.0 * c + r;
        if (denom < 0.0) offset = std::clamp(0.5 * (l - r) / denom, -0.5, 0.5);
    }
    const double bin_hz = static_cast<double>(frame.sample_rate) / static_cast<double>(kAnalysisWindow);
    reading.pitch_hz = (static_cast<double>(peak) + offset) * bin_hz;
    return reading;
}

ProgressState stability_step(const ProgressState& state, const PitchReading& reading, std::int64_t now_ms,
                             const StabilityConfig& cfg) {
    if (state.last_tick_ms && now_ms <= *state.last_tick_ms) {
        throw NonMonotoneTimestamp("stability_step: timestamp " + std::to_string(now_ms) +
                                   " does not follow " + std::to_string(*state.last_tick_ms));
    }
    ProgressState next = state;
    next.last_tick_ms = now_ms;

    if (state.level >= kMaxLevel) {
        next.level = kMaxLevel;
        next.percent = 100.0;
        return next;
    }

    auto restart = [&] {
        next.stable_since_ms = now_ms;
        next.percent = 0.0;
    };

    if (reading.silent()) {
        restart();
        next.last_reading.reset();
        return next;
    }
    if (!state.last_reading || !state.stable_since_ms) {
        restart();
        next.last_reading = reading;
        return next;
    }
    next.last_reading = reading;
    if (fluctuates(*state.last_reading, reading, cfg)) {
        restart();
        return next;
    }

    const auto required = cfg.level_durations_ms[static_cast<std::size_t>(state.level - 1)];
    const auto duration = now_ms - *state.stable_since_ms;
    if (duration >= required) {
        next.level = state.level + 1;
        next.stable_since_ms = now_ms;
        next.percent = next.level == kMaxLevel ? 100.0 : 0.0;
        return next;
    }
    next.percent = std::min(100.0, 100.0 * static_cast<double>(duration) / static_cast<double>(required));
    return next;
}

Progress progress(const ProgressState& state) {
    if (state.level >= kMaxLevel) return {kMaxLevel, 100.0};
    return {state.level, state.percent};
}

}  // namespace alchemy
