#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace alchemy {

/// Raised when two lattices that must share dimensions do not.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Channel : std::uint8_t { A = 0, R = 1, G = 2, B = 3 };

inline constexpr std::array<Channel, 4> kAllChannels{Channel::A, Channel::R, Channel::G, Channel::B};
inline constexpr std::array<Channel, 3> kColorChannels{Channel::R, Channel::G, Channel::B};

const char* channel_name(Channel c);

/// Round-half-up after clamping to [0, 255].
std::uint8_t clamp_round(double v);

struct Cell {
    std::uint8_t a = 0;
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    std::uint8_t operator[](Channel c) const;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// A single width x height 8-bit channel, row-major.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, std::uint8_t fill = 0);
    Plane(int width, int height, std::vector<std::uint8_t> cells);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return cells_.size(); }

    std::uint8_t at(int x, int y) const { return cells_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return cells_[index(x, y)]; }

    std::span<const std::uint8_t> cells() const { return cells_; }
    std::span<std::uint8_t> cells() { return cells_; }

    bool same_shape(const Plane& o) const { return width_ == o.width_ && height_ == o.height_; }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> cells_;
};

/// Four-plane (A, R, G, B) 8-bit lattice. Planar storage; value semantics.
class ArgbMatrix {
public:
    ArgbMatrix() = default;
    ArgbMatrix(int width, int height);
    ArgbMatrix(int width, int height, Cell fill);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool same_shape(const ArgbMatrix& o) const { return width_ == o.width_ && height_ == o.height_; }

    const Plane& plane(Channel c) const { return planes_[static_cast<std::size_t>(c)]; }
    Plane& plane(Channel c) { return planes_[static_cast<std::size_t>(c)]; }

    std::uint8_t at(Channel c, int x, int y) const { return plane(c).at(x, y); }
    std::uint8_t& at(Channel c, int x, int y) { return plane(c).at(x, y); }

    Cell cell(int x, int y) const;
    void set_cell(int x, int y, Cell v);

    friend bool operator==(const ArgbMatrix&, const ArgbMatrix&) = default;

private:
    friend ArgbMatrix pack(Plane a, Plane r, Plane g, Plane b);

    int width_ = 0;
    int height_ = 0;
    std::array<Plane, 4> planes_;
};

struct SolventOutputs {
    ArgbMatrix arg;  ///< A, R, G kept; B zeroed
    ArgbMatrix ag;   ///< A, G kept
    ArgbMatrix ar;   ///< A, R kept
};

std::tuple<Plane, Plane, Plane, Plane> unpack(const ArgbMatrix& m);

/// Throws DimensionMismatch naming the first plane whose shape differs from A.
ArgbMatrix pack(Plane a, Plane r, Plane g, Plane b);

/// Splits into (A+R+G), (A+G), (A+R). Blue is always discarded.
SolventOutputs solvent_split(const ArgbMatrix& m);

ArgbMatrix subtract_sat(const ArgbMatrix& lhs, const ArgbMatrix& rhs);
ArgbMatrix add_sat(const ArgbMatrix& lhs, const ArgbMatrix& rhs);
/// floor((lhs + rhs) / 2) per cell.
ArgbMatrix average(const ArgbMatrix& lhs, const ArgbMatrix& rhs);

/// R' = max(R, round(2.55 * percent)). Percent must lie in [0, 100].
ArgbMatrix tint_progress(const ArgbMatrix& m, double percent);

/// Rec.601 luma of one cell, round-half-up.
std::uint8_t luminance(const Cell& c);

}  // namespace alchemy
