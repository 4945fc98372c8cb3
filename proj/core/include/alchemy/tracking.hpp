#pragma once

#include <cstdint>
#include <optional>

#include "alchemy/matrix.hpp"

namespace alchemy {

/// Inclusive per-channel RGB window. Alpha never participates in matching.
struct ColorRange {
    std::uint8_t min_r = 0, min_g = 0, min_b = 0;
    std::uint8_t max_r = 255, max_g = 255, max_b = 255;

    bool valid() const { return min_r <= max_r && min_g <= max_g && min_b <= max_b; }
    bool matches(const Cell& c) const {
        return c.r >= min_r && c.r <= max_r && c.g >= min_g && c.g <= max_g && c.b >= min_b && c.b <= max_b;
    }

    friend bool operator==(const ColorRange&, const ColorRange&) = default;
};

/// Width and height are extents (max - min), so a single-cell box is 0 x 0
/// and its centre may be half-integral.
struct BoundingBox {
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    double center_x = 0.0, center_y = 0.0;
    double width = 0.0, height = 0.0;

    static BoundingBox from_corners(int min_x, int min_y, int max_x, int max_y);

    bool contains(int x, int y) const { return x >= min_x && x <= max_x && y >= min_y && y <= max_y; }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Samples cell (x, y) and widens each colour channel by +/- tolerance, clamped to [0, 255].
ColorRange pick_color(const ArgbMatrix& m, int x, int y, int tolerance);

std::optional<BoundingBox> find_bounds(const ArgbMatrix& m, const ColorRange& range);

/// 1-cell green (A=255, G=255) rectangle on the box perimeter. R and B of
/// perimeter cells are cleared.
ArgbMatrix draw_outline(const ArgbMatrix& m, const BoundingBox& box);

}  // namespace alchemy
