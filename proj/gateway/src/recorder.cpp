#include "alchemy/gateway/recorder.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/json_codec.hpp"
#include "alchemy/gateway/png_io.hpp"

namespace alchemy::gateway {

namespace {

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Recorder::Recorder(std::filesystem::path directory, double fps, int width, int height, std::string session_id)
    : directory_(std::move(directory)) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) throw RecorderError("cannot create recording directory " + directory_.string() + ": " + ec.message());

    manifest_.session_id = session_id.empty() ? "session-" + std::to_string(std::time(nullptr)) : std::move(session_id);
    manifest_.fps = fps;
    manifest_.width = width;
    manifest_.height = height;
    manifest_.started_at = utc_now_iso8601();
    std::lock_guard lock(mutex_);
    write_manifest_locked();
}

std::string Recorder::frame_file_name(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06llu.png", static_cast<unsigned long long>(index));
    return buf;
}

void Recorder::write(const ArgbMatrix& frame) {
    std::lock_guard lock(mutex_);
    if (manifest_.stopped_at) throw WriteAfterStop("recording " + manifest_.session_id + " is already stopped");
    if (frame.width() != manifest_.width || frame.height() != manifest_.height) {
        throw RecorderError("frame size " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                            " does not match the recording");
    }
    try {
        write_png(directory_ / frame_file_name(manifest_.frame_count), frame);
    } catch (const ImageError& e) {
        throw RecorderError(e.what());
    }
    ++manifest_.frame_count;
}

RecordingManifest Recorder::stop() {
    std::lock_guard lock(mutex_);
    if (manifest_.stopped_at) throw AlreadyStopped("recording " + manifest_.session_id + " is already stopped");
    manifest_.stopped_at = utc_now_iso8601();
    write_manifest_locked();
    return manifest_;
}

RecordingManifest Recorder::manifest() const {
    std::lock_guard lock(mutex_);
    return manifest_;
}

bool Recorder::stopped() const {
    std::lock_guard lock(mutex_);
    return manifest_.stopped_at.has_value();
}

void Recorder::write_manifest_locked() const {
    std::ofstream out(directory_ / kManifestFile);
    out << to_json(manifest_).dump(2) << '\n';
    if (!out) throw RecorderError("cannot write manifest in " + directory_.string());
}

RecordingManifest read_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw RecorderError("cannot open manifest " + file.string());
    try {
        return manifest_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw RecorderError("manifest " + file.string() + " is not valid JSON: " + e.what());
    }
}

}  // namespace alchemy::gateway
