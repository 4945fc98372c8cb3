#include "alchemy/gateway/frame_source.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/png_io.hpp"

namespace alchemy::gateway {

namespace {

constexpr Cell kMagenta{255, 255, 0, 255};

std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

void fill_rect(ArgbMatrix& m, int cx, int cy, int half, Cell c) {
    for (int y = cy - half; y <= cy + half; ++y) {
        for (int x = cx - half; x <= cx + half; ++x) {
            if (m.contains(x, y)) m.set_cell(x, y, c);
        }
    }
}

// Trailing run of digits in a file stem, e.g. "frame_000012" -> 12.
std::optional<std::uint64_t> frame_number(const std::filesystem::path& p) {
    const std::string stem = p.stem().string();
    std::size_t start = stem.size();
    while (start > 0 && std::isdigit(static_cast<unsigned char>(stem[start - 1]))) --start;
    if (start == stem.size()) return std::nullopt;
    return std::stoull(stem.substr(start));
}

}  // namespace

std::optional<SyntheticPattern> parse_pattern(std::string_view name) {
    if (name == "gradient") return SyntheticPattern::Gradient;
    if (name == "glove") return SyntheticPattern::Glove;
    if (name == "noise") return SyntheticPattern::Noise;
    if (name == "solid") return SyntheticPattern::Solid;
    return std::nullopt;
}

std::string_view pattern_name(SyntheticPattern p) {
    switch (p) {
        case SyntheticPattern::Gradient: return "gradient";
        case SyntheticPattern::Glove: return "glove";
        case SyntheticPattern::Noise: return "noise";
        case SyntheticPattern::Solid: return "solid";
    }
    return "unknown";
}

SyntheticSource::SyntheticSource(SyntheticOptions opts) : opts_(opts) {
    if (opts_.width <= 0 || opts_.height <= 0) throw SourceError("synthetic source needs positive dimensions");
    if (!(opts_.fps > 0.0)) throw SourceError("synthetic source needs a positive fps");
}

std::optional<ArgbMatrix> SyntheticSource::next() {
    if (opts_.frame_limit && index_ >= *opts_.frame_limit) return std::nullopt;
    return frame_at(index_++);
}

ArgbMatrix SyntheticSource::frame_at(std::uint64_t index) const {
    const int w = opts_.width;
    const int h = opts_.height;
    const double t = static_cast<double>(index) / opts_.fps;
    ArgbMatrix m(w, h, Cell{255, 0, 0, 0});

    switch (opts_.pattern) {
        case SyntheticPattern::Solid:
            m = ArgbMatrix(w, h, Cell{255, 128, 128, 128});
            break;
        case SyntheticPattern::Gradient: {
            const int phase = static_cast<int>(index % 256);
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const int r = (x * 255 / std::max(1, w - 1) + phase) % 256;
                    const int g = y * 255 / std::max(1, h - 1);
                    m.set_cell(x, y, Cell{255, static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), 64});
                }
            }
            break;
        }
        case SyntheticPattern::Noise: {
            auto rng = frame_rng(opts_.seed, index);
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const auto v = rng();
                    m.set_cell(x, y, Cell{255, static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                                          static_cast<std::uint8_t>(v >> 16)});
                }
            }
            break;
        }
        case SyntheticPattern::Glove: {
            auto rng = frame_rng(opts_.seed, index);
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const auto v = rng();
                    const auto base = static_cast<std::uint8_t>(24 + (v & 31));
                    m.set_cell(x, y, Cell{255, base, base, static_cast<std::uint8_t>(base + 24)});
                }
            }
            const double two_pi = 2.0 * std::numbers::pi;
            const double separation = w * (0.35 + 0.25 * std::sin(two_pi * t / 4.0));
            const int cx = w / 2 + static_cast<int>(std::lround(w * 0.1 * std::sin(two_pi * t / 7.0)));
            const int cy = h / 2 + static_cast<int>(std::lround(h * 0.15 * std::sin(two_pi * t / 6.0)));
            const int half = std::max(1, std::min(w, h) / 16);
            const int offset = static_cast<int>(std::lround(separation / 2.0));
            fill_rect(m, cx - offset, cy, half, kMagenta);
            fill_rect(m, cx + offset, cy, half, kMagenta);
            break;
        }
    }
    return m;
}

ImageSequenceSource read_frame_sequence(const std::filesystem::path& directory, double fps) {
    namespace fs = std::filesystem;
    if (!(fps > 0.0)) throw SourceError("frame sequence fps must be positive");
    if (!fs::is_directory(directory)) throw SourceError("frame directory not found: " + directory.string());

    std::vector<std::pair<std::uint64_t, fs::path>> numbered;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext != ".png") continue;
        if (auto n = frame_number(entry.path())) numbered.emplace_back(*n, entry.path());
    }
    if (numbered.empty()) throw SourceError("no numbered PNG frames in " + directory.string());
    std::sort(numbered.begin(), numbered.end());

    ImageSequenceSource src;
    src.fps_ = fps;
    for (auto& [n, path] : numbered) src.files_.push_back(std::move(path));

    const auto [w, h] = png_dimensions(src.files_.front());
    src.width_ = w;
    src.height_ = h;
    for (const auto& path : src.files_) {
        const auto [fw, fh] = png_dimensions(path);
        if (fw != w || fh != h) {
            throw SourceError("inconsistent frame dimensions: " + path.string() + " is " + std::to_string(fw) + "x" +
                              std::to_string(fh) + ", expected " + std::to_string(w) + "x" + std::to_string(h));
        }
    }
    return src;
}

std::optional<ArgbMatrix> ImageSequenceSource::next() {
    if (cursor_ >= files_.size()) return std::nullopt;
    return read_png(files_[cursor_++]);
}

LiveCaptureSource::LiveCaptureSource(std::unique_ptr<CaptureDevice> device, std::string device_id, int width,
                                     int height)
    : device_(std::move(device)), width_(width), height_(height) {
    if (!device_) throw SourceError("live capture needs a device backend");
    if (!device_->open(device_id, width, height)) throw SourceError("cannot open capture device " + device_id);
}

std::optional<ArgbMatrix> LiveCaptureSource::next() {
    auto frame = device_->grab();
    if (frame && (frame->width() != width_ || frame->height() != height_)) {
        throw SourceError("capture device changed frame size mid-session");
    }
    return frame;
}

}  // namespace alchemy::gateway
