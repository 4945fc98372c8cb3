#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "alchemy/matrix.hpp"

namespace alchemy::testing {

inline ArgbMatrix random_matrix(int width, int height, std::mt19937_64& rng) {
    ArgbMatrix m(width, height);
    std::uniform_int_distribution<int> byte(0, 255);
    for (Channel c : kAllChannels) {
        for (auto& v : m.plane(c).cells()) v = static_cast<std::uint8_t>(byte(rng));
    }
    return m;
}

inline ArgbMatrix filled(int width, int height, Cell c) { return ArgbMatrix(width, height, c); }

/// Scalar half-up rounding with clamping, written independently of the library helper.
inline int oracle_round(double v) {
    if (v <= 0.0) return 0;
    if (v >= 255.0) return 255;
    return static_cast<int>(v + 0.5);
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("alchemy-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace alchemy::testing
