#include "alchemy/tracking.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace alchemy {

BoundingBox BoundingBox::from_corners(int min_x, int min_y, int max_x, int max_y) {
    BoundingBox b;
    b.min_x = min_x;
    b.min_y = min_y;
    b.max_x = max_x;
    b.max_y = max_y;
    b.center_x = (min_x + max_x) / 2.0;
    b.center_y = (min_y + max_y) / 2.0;
    b.width = static_cast<double>(max_x - min_x);
    b.height = static_cast<double>(max_y - min_y);
    return b;
}

ColorRange pick_color(const ArgbMatrix& m, int x, int y, int tolerance) {
    if (!m.contains(x, y)) {
        throw std::out_of_range("pick_color: (" + std::to_string(x) + ", " + std::to_string(y) +
                                ") outside " + std::to_string(m.width()) + "x" + std::to_string(m.height()));
    }
    if (tolerance < 0 || tolerance > 255) {
        throw std::out_of_range("pick_color: tolerance " + std::to_string(tolerance) + " outside [0, 255]");
    }
    const Cell c = m.cell(x, y);
    auto lo = [&](std::uint8_t v) { return static_cast<std::uint8_t>(std::max(0, v - tolerance)); };
    auto hi = [&](std::uint8_t v) { return static_cast<std::uint8_t>(std::min(255, v + tolerance)); };
    return ColorRange{lo(c.r), lo(c.g), lo(c.b), hi(c.r), hi(c.g), hi(c.b)};
}

std::optional<BoundingBox> find_bounds(const ArgbMatrix& m, const ColorRange& range) {
    if (!range.valid()) {
        throw std::invalid_argument("find_bounds: colour range has min > max");
    }
    const auto r = m.plane(Channel::R).cells();
    const auto g = m.plane(Channel::G).cells();
    const auto b = m.plane(Channel::B).cells();

    int min_x = m.width(), min_y = m.height(), max_x = -1, max_y = -1;
    std::size_t i = 0;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x, ++i) {
            if (r[i] < range.min_r || r[i] > range.max_r || g[i] < range.min_g || g[i] > range.max_g ||
                b[i] < range.min_b || b[i] > range.max_b) {
                continue;
            }
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    if (max_x < 0) return std::nullopt;
    return BoundingBox::from_corners(min_x, min_y, max_x, max_y);
}

ArgbMatrix draw_outline(const ArgbMatrix& m, const BoundingBox& box) {
    if (box.min_x > box.max_x || box.min_y > box.max_y || !m.contains(box.min_x, box.min_y) ||
        !m.contains(box.max_x, box.max_y)) {
        throw std::out_of_range("draw_outline: box (" + std::to_string(box.min_x) + "," + std::to_string(box.min_y) +
                                ")-(" + std::to_string(box.max_x) + "," + std::to_string(box.max_y) +
                                ") not inside the frame");
    }
    constexpr Cell kGreen{255, 0, 255, 0};
    ArgbMatrix out = m;
    for (int x = box.min_x; x <= box.max_x; ++x) {
        out.set_cell(x, box.min_y, kGreen);
        out.set_cell(x, box.max_y, kGreen);
    }
    for (int y = box.min_y; y <= box.max_y; ++y) {
        out.set_cell(box.min_x, y, kGreen);
        out.set_cell(box.max_x, y, kGreen);
    }
    return out;
}

}  // namespace alchemy
