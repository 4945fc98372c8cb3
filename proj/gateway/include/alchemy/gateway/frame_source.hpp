#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "alchemy/matrix.hpp"

namespace alchemy::gateway {

/// A stream of constant-size frames.
class FrameSource {
public:
    virtual ~FrameSource() = default;

    /// Next frame, or nullopt when the stream has ended.
    virtual std::optional<ArgbMatrix> next() = 0;
    virtual int width() const = 0;
    virtual int height() const = 0;
    virtual double fps() const = 0;
};

enum class SyntheticPattern { Gradient, Glove, Noise, Solid };

std::optional<SyntheticPattern> parse_pattern(std::string_view name);
std::string_view pattern_name(SyntheticPattern p);

struct SyntheticOptions {
    SyntheticPattern pattern = SyntheticPattern::Glove;
    std::uint64_t seed = 1;
    int width = 320;
    int height = 240;
    double fps = 15.0;
    std::optional<std::uint64_t> frame_limit;  ///< endless when absent
};

/// Deterministic generated video. The glove pattern moves two magenta
/// patches (A=255, R=255, G=0, B=255) across a dim, noisy background while
/// their separation breathes, which exercises colour tracking and star scaling.
class SyntheticSource final : public FrameSource {
public:
    explicit SyntheticSource(SyntheticOptions opts);

    std::optional<ArgbMatrix> next() override;
    int width() const override { return opts_.width; }
    int height() const override { return opts_.height; }
    double fps() const override { return opts_.fps; }

    /// Frame `index` without advancing the stream.
    ArgbMatrix frame_at(std::uint64_t index) const;

private:
    SyntheticOptions opts_;
    std::uint64_t index_ = 0;
};

/// Numbered PNG files (`000.png`, `frame_000012.png`, ...) replayed in
/// numeric order. All headers are checked when the source is opened.
class ImageSequenceSource final : public FrameSource {
public:
    std::optional<ArgbMatrix> next() override;
    int width() const override { return width_; }
    int height() const override { return height_; }
    double fps() const override { return fps_; }

    const std::vector<std::filesystem::path>& files() const { return files_; }

private:
    friend ImageSequenceSource read_frame_sequence(const std::filesystem::path& directory, double fps);
    ImageSequenceSource() = default;

    std::vector<std::filesystem::path> files_;
    std::size_t cursor_ = 0;
    int width_ = 0;
    int height_ = 0;
    double fps_ = 15.0;
};

/// Throws SourceError for a missing or empty directory or mixed frame sizes
/// (naming the first offending file), ImageError for unreadable files.
ImageSequenceSource read_frame_sequence(const std::filesystem::path& directory, double fps);

/// Hardware hook. No device backend ships with this project; an
/// implementation only has to hand over ARGB frames.
class CaptureDevice {
public:
    virtual ~CaptureDevice() = default;
    virtual bool open(const std::string& device_id, int width, int height) = 0;
    virtual std::optional<ArgbMatrix> grab() = 0;
    virtual double fps() const = 0;
};

class LiveCaptureSource final : public FrameSource {
public:
    LiveCaptureSource(std::unique_ptr<CaptureDevice> device, std::string device_id, int width, int height);

    std::optional<ArgbMatrix> next() override;
    int width() const override { return width_; }
    int height() const override { return height_; }
    double fps() const override { return device_->fps(); }

private:
    std::unique_ptr<CaptureDevice> device_;
    int width_;
    int height_;
};

}  // namespace alchemy::gateway
