#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "alchemy/audio.hpp"

namespace alchemy::gateway {

/// Decoded mono audio, samples normalised to [-1, 1].
struct AudioClip {
    std::vector<float> samples;
    int sample_rate = 44100;
    int source_channels = 1;

    std::int64_t duration_ms() const;

    /// The kAnalysisWindow samples ending at time `t_ms`, or nullopt when
    /// fewer than a full window precede it or t_ms lies past the end.
    std::optional<AudioFrame> window_at(std::int64_t t_ms) const;

    /// Tick times (multiples of interval_ms) that have a full window.
    std::vector<std::int64_t> tick_times(std::int64_t interval_ms) const;
};

/// PCM 16-bit or IEEE float 32-bit, any channel count (averaged to mono).
/// Throws UnsupportedEncoding or TruncatedFile.
AudioClip read_wav(const std::filesystem::path& path);
AudioClip decode_wav(std::span<const std::uint8_t> bytes);

enum class WavEncoding { Pcm16, Float32 };

/// Interleaved samples in [-1, 1].
void write_wav(const std::filesystem::path& path, std::span<const float> interleaved, int sample_rate, int channels,
               WavEncoding encoding = WavEncoding::Pcm16);

/// A * sin(2 pi f t), `seconds` long.
std::vector<float> synth_sine(double freq_hz, double amplitude, double seconds, int sample_rate);

}  // namespace alchemy::gateway
