#include "alchemy/gateway/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "alchemy/gateway/errors.hpp"

namespace alchemy::gateway {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t remaining() const { return bytes_.size() - pos_; }
    std::size_t position() const { return pos_; }

    std::span<const std::uint8_t> take(std::size_t n, const char* what) {
        if (remaining() < n) throw TruncatedFile(std::string("wav truncated while reading ") + what);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    std::uint16_t u16(const char* what) {
        auto b = take(2, what);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32(const char* what) {
        auto b = take(4, what);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }
    std::string tag(const char* what) {
        auto b = take(4, what);
        return std::string(b.begin(), b.end());
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

struct Format {
    std::uint16_t code = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

}  // namespace

std::int64_t AudioClip::duration_ms() const {
    return static_cast<std::int64_t>(samples.size()) * 1000 / sample_rate;
}

std::optional<AudioFrame> AudioClip::window_at(std::int64_t t_ms) const {
    if (t_ms < 0) return std::nullopt;
    const auto end = static_cast<std::size_t>(t_ms * sample_rate / 1000);
    if (end < kAnalysisWindow || end > samples.size()) return std::nullopt;
    return AudioFrame{std::span<const float>(samples).subspan(end - kAnalysisWindow, kAnalysisWindow), sample_rate};
}

std::vector<std::int64_t> AudioClip::tick_times(std::int64_t interval_ms) const {
    std::vector<std::int64_t> ticks;
    for (std::int64_t t = 0;; t += interval_ms) {
        const auto end = static_cast<std::size_t>(t * sample_rate / 1000);
        if (end > samples.size()) break;
        if (end >= kAnalysisWindow) ticks.push_back(t);
    }
    return ticks;
}

AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    if (r.tag("RIFF header") != "RIFF") throw UnsupportedEncoding("not a RIFF file");
    r.u32("RIFF size");
    if (r.tag("WAVE tag") != "WAVE") throw UnsupportedEncoding("RIFF file is not WAVE");

    std::optional<Format> fmt;
    std::optional<std::span<const std::uint8_t>> data;
    while (r.remaining() >= 8) {
        const std::string id = r.tag("chunk id");
        const std::uint32_t size = r.u32("chunk size");
        if (id == "data") {
            data = r.take(size, "data chunk");
            break;
        }
        const auto body = r.take(size, "chunk body");
        if ((size & 1u) && r.remaining() > 0) r.take(1, "pad byte");
        if (id != "fmt ") continue;

        Reader f(body);
        Format parsed;
        parsed.code = f.u16("format code");
        parsed.channels = f.u16("channel count");
        parsed.sample_rate = f.u32("sample rate");
        f.u32("byte rate");
        f.u16("block align");
        parsed.bits = f.u16("bits per sample");
        if (parsed.code == kFormatExtensible) {
            f.u16("extension size");
            f.u16("valid bits");
            f.u32("channel mask");
            parsed.code = f.u16("sub-format");
        }
        fmt = parsed;
    }
    if (!fmt) throw TruncatedFile("wav has no fmt chunk");
    if (!data) throw TruncatedFile("wav has no data chunk");

    const bool pcm16 = fmt->code == kFormatPcm && fmt->bits == 16;
    const bool float32 = fmt->code == kFormatFloat && fmt->bits == 32;
    if (!pcm16 && !float32) {
        throw UnsupportedEncoding("unsupported wav encoding: format " + std::to_string(fmt->code) + ", " +
                                  std::to_string(fmt->bits) + "-bit");
    }
    if (fmt->channels == 0 || fmt->sample_rate == 0) throw UnsupportedEncoding("wav declares no channels or rate");

    const std::size_t bytes_per_sample = fmt->bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
    if (data->size() % frame_bytes != 0) throw TruncatedFile("wav data ends mid-frame");
    const std::size_t frames = data->size() / frame_bytes;

    AudioClip clip;
    clip.sample_rate = static_cast<int>(fmt->sample_rate);
    clip.source_channels = fmt->channels;
    clip.samples.resize(frames);
    const std::uint8_t* p = data->data();
    for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < fmt->channels; ++c, p += bytes_per_sample) {
            if (pcm16) {
                const auto raw = static_cast<std::int16_t>(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
                acc += raw / 32768.0;
            } else {
                std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                                     (static_cast<std::uint32_t>(p[2]) << 16) |
                                     (static_cast<std::uint32_t>(p[3]) << 24);
                acc += std::clamp(std::bit_cast<float>(bits), -1.0f, 1.0f);
            }
        }
        clip.samples[i] = static_cast<float>(acc / fmt->channels);
    }
    return clip;
}

AudioClip read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GatewayError("cannot open wav file " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

void write_wav(const std::filesystem::path& path, std::span<const float> interleaved, int sample_rate, int channels,
               WavEncoding encoding) {
    if (channels <= 0 || sample_rate <= 0) throw std::invalid_argument("write_wav: bad channel count or rate");
    const std::uint16_t bits = encoding == WavEncoding::Pcm16 ? 16 : 32;
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(interleaved.size() * (bits / 8));

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, 36 + data_bytes);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, encoding == WavEncoding::Pcm16 ? kFormatPcm : kFormatFloat);
    put_u16(out, static_cast<std::uint16_t>(channels));
    put_u32(out, static_cast<std::uint32_t>(sample_rate));
    put_u32(out, static_cast<std::uint32_t>(sample_rate * channels * (bits / 8)));
    put_u16(out, static_cast<std::uint16_t>(channels * (bits / 8)));
    put_u16(out, bits);
    put_tag(out, "data");
    put_u32(out, data_bytes);
    for (float s : interleaved) {
        const float c = std::clamp(s, -1.0f, 1.0f);
        if (encoding == WavEncoding::Pcm16) {
            const auto q = static_cast<std::int16_t>(std::lround(std::clamp(c * 32768.0, -32768.0, 32767.0)));
            put_u16(out, static_cast<std::uint16_t>(q));
        } else {
            put_u32(out, std::bit_cast<std::uint32_t>(c));
        }
    }

    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw GatewayError("cannot write wav file " + path.string());
}

std::vector<float> synth_sine(double freq_hz, double amplitude, double seconds, int sample_rate) {
    const auto n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
    std::vector<float> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<float>(amplitude *
                                    std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / sample_rate));
    }
    return out;
}

}  // namespace alchemy::gateway
