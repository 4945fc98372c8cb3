#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

namespace alchemy {

/// Samples per analysis window.
inline constexpr std::size_t kAnalysisWindow = 2048;

class FrameTooShort : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonMonotoneTimestamp : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mono view over normalised samples in [-1, 1].
struct AudioFrame {
    std::span<const float> samples;
    int sample_rate = 44100;
};

struct PitchReading {
    std::optional<double> pitch_hz;  ///< absent when the window is silent
    double amplitude_rms = 0.0;

    bool silent() const { return !pitch_hz.has_value(); }
    friend bool operator==(const PitchReading&, const PitchReading&) = default;
};

struct StabilityConfig {
    std::int64_t interval_ms = 200;
    double rel_pitch_tol = 0.06;  ///< about one semitone
    double rel_amp_tol = 0.25;
    std::array<std::int64_t, 3> level_durations_ms{5000, 8000, 12000};  ///< 1->2, 2->3, 3->4
    double silence_rms = 0.01;

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
    friend bool operator==(const StabilityConfig&, const StabilityConfig&) = default;
};

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 4;

struct ProgressState {
    int level = kMinLevel;
    double percent = 0.0;
    std::optional<std::int64_t> stable_since_ms;
    std::optional<PitchReading> last_reading;  ///< comparison reference; absent right after silence
    std::optional<std::int64_t> last_tick_ms;

    friend bool operator==(const ProgressState&, const ProgressState&) = default;
};

struct Progress {
    int level = kMinLevel;
    double percent = 0.0;
    friend bool operator==(const Progress&, const Progress&) = default;
};

/// RMS of the most recent kAnalysisWindow samples, plus the Hann-windowed
/// FFT peak refined by a 3-point parabola over log magnitudes. Pitch is
/// absent when the RMS is below `silence_rms`.
PitchReading estimate_pitch_amplitude(const AudioFrame& frame, double silence_rms = 0.01);

/// One audio-clock tick of the progression state machine.
///
/// Silence, or a relative pitch/amplitude jump beyond tolerance against the
/// previous reading, restarts the stable timer and zeroes the percentage.
/// The first reading after a restart only seeds the comparison. Once the
/// stable duration reaches the current level's requirement the level
/// advances (never past 4) and the timer restarts. Levels never decrease.
ProgressState stability_step(const ProgressState& state, const PitchReading& reading, std::int64_t now_ms,
                             const StabilityConfig& cfg);

Progress progress(const ProgressState& state);

}  // namespace alchemy
