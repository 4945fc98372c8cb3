#include <gtest/gtest.h>

#include <thread>

#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/frame_source.hpp"
#include "alchemy/gateway/recorder.hpp"
#include "support.hpp"

namespace alchemy::gateway {
namespace {

using alchemy::testing::random_matrix;
using alchemy::testing::TempDir;

TEST(Recorder, FiveFramesThenStop) {
    TempDir dir("rec");
    Recorder rec(dir / "out", 15.0, 8, 6, "session-a");
    std::mt19937_64 rng(101);
    for (int i = 0; i < 5; ++i) rec.write(random_matrix(8, 6, rng));
    const auto m = rec.stop();
    EXPECT_EQ(m.frame_count, 5u);
    EXPECT_EQ(m.session_id, "session-a");
    EXPECT_TRUE(m.stopped_at);
    int pngs = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir / "out")) pngs += e.path().extension() == ".png";
    EXPECT_EQ(pngs, 5);
    EXPECT_EQ(read_manifest(dir / "out" / kManifestFile), m);
}

TEST(Recorder, WriteAfterStopRejected) {
    TempDir dir("rec-stop");
    Recorder rec(dir.path(), 15.0, 4, 4);
    rec.stop();
    EXPECT_THROW(rec.write(ArgbMatrix(4, 4)), WriteAfterStop);
    EXPECT_THROW(rec.stop(), AlreadyStopped);
}

TEST(Recorder, EmptySessionIsValid) {
    TempDir dir("rec-empty");
    Recorder rec(dir.path(), 30.0, 4, 4);
    const auto m = rec.stop();
    EXPECT_EQ(m.frame_count, 0u);
    EXPECT_EQ(read_manifest(dir / kManifestFile).frame_count, 0u);
    EXPECT_FALSE(m.session_id.empty());
}

TEST(Recorder, ManifestExistsWhileRecording) {
    TempDir dir("rec-live");
    Recorder rec(dir.path(), 15.0, 4, 4);
    const auto m = read_manifest(dir / kManifestFile);
    EXPECT_EQ(m.frame_count, 0u);
    EXPECT_FALSE(m.stopped_at);
    EXPECT_FALSE(rec.stopped());
}

TEST(Recorder, WrongFrameSizeRejected) {
    TempDir dir("rec-size");
    Recorder rec(dir.path(), 15.0, 4, 4);
    EXPECT_THROW(rec.write(ArgbMatrix(5, 4)), RecorderError);
    EXPECT_EQ(rec.manifest().frame_count, 0u);
}

TEST(Recorder, RoundTripThroughFrameSequence) {
    TempDir dir("rec-rt");
    Recorder rec(dir.path(), 15.0, 16, 16);
    std::mt19937_64 rng(102);
    std::vector<ArgbMatrix> frames;
    for (int i = 0; i < 10; ++i) {
        frames.push_back(random_matrix(16, 16, rng));
        rec.write(frames.back());
    }
    EXPECT_EQ(rec.stop().frame_count, 10u);
    auto src = read_frame_sequence(dir.path(), 15.0);
    for (const auto& expected : frames) EXPECT_EQ(src.next(), expected);
    EXPECT_FALSE(src.next());
}

TEST(Recorder, ConcurrentWriteAndStop) {
    TempDir dir("rec-race");
    Recorder rec(dir.path(), 15.0, 4, 4);
    std::thread writer([&] {
        for (int i = 0; i < 500; ++i) {
            try {
                rec.write(ArgbMatrix(4, 4));
            } catch (const WriteAfterStop&) {
                return;
            }
        }
    });
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    const auto m = rec.stop();
    writer.join();
    std::uint64_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir.path())) files += e.path().extension() == ".png";
    EXPECT_EQ(m.frame_count, files);
}

TEST(Recorder, FrameFileName) { EXPECT_EQ(Recorder::frame_file_name(12), "frame_000012.png"); }

}  // namespace
}  // namespace alchemy::gateway
