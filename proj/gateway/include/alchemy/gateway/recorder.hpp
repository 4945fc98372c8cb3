#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "alchemy/matrix.hpp"

namespace alchemy::gateway {

struct RecordingManifest {
    std::string session_id;
    std::uint64_t frame_count = 0;
    double fps = 0.0;
    int width = 0;
    int height = 0;
    std::string started_at;               ///< ISO-8601 UTC
    std::optional<std::string> stopped_at;

    friend bool operator==(const RecordingManifest&, const RecordingManifest&) = default;
};

inline constexpr const char* kManifestFile = "manifest.json";

/// Writes every frame as `frame_NNNNNN.png` in one directory. Recording
/// begins on construction; stop() finalises `manifest.json`. Safe to call
/// from the video thread and the control plane concurrently.
class Recorder {
public:
    Recorder(std::filesystem::path directory, double fps, int width, int height, std::string session_id = {});

    /// Throws WriteAfterStop after stop(), RecorderError on IO failure or a frame of the wrong size.
    void write(const ArgbMatrix& frame);

    /// Throws AlreadyStopped on the second call.
    RecordingManifest stop();

    RecordingManifest manifest() const;
    bool stopped() const;
    const std::filesystem::path& directory() const { return directory_; }

    static std::string frame_file_name(std::uint64_t index);

private:
    void write_manifest_locked() const;

    std::filesystem::path directory_;
    mutable std::mutex mutex_;
    RecordingManifest manifest_;
};

RecordingManifest read_manifest(const std::filesystem::path& file);

}  // namespace alchemy::gateway
