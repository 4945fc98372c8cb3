#include "alchemy/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace alchemy {

namespace {

void require_positive(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("lattice dimensions must be positive, got " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

void require_same_shape(const ArgbMatrix& lhs, const ArgbMatrix& rhs, const char* op) {
    if (!lhs.same_shape(rhs)) {
        throw DimensionMismatch(std::string(op) + ": " + std::to_string(lhs.width()) + "x" +
                                std::to_string(lhs.height()) + " vs " + std::to_string(rhs.width()) + "x" +
                                std::to_string(rhs.height()));
    }
}

template <typename Fn>
ArgbMatrix zip_cells(const ArgbMatrix& lhs, const ArgbMatrix& rhs, const char* op, Fn fn) {
    require_same_shape(lhs, rhs, op);
    ArgbMatrix out(lhs.width(), lhs.height());
    for (Channel c : kAllChannels) {
        auto l = lhs.plane(c).cells();
        auto r = rhs.plane(c).cells();
        auto o = out.plane(c).cells();
        for (std::size_t i = 0; i < o.size(); ++i) {
            o[i] = fn(l[i], r[i]);
        }
    }
    return out;
}

}  // namespace

const char* channel_name(Channel c) {
    switch (c) {
        case Channel::A: return "A";
        case Channel::R: return "R";
        case Channel::G: return "G";
        case Channel::B: return "B";
    }
    return "?";
}

std::uint8_t clamp_round(double v) {
    if (!(v > 0.0)) return 0;  // also catches NaN
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

std::uint8_t Cell::operator[](Channel c) const {
    switch (c) {
        case Channel::A: return a;
        case Channel::R: return r;
        case Channel::G: return g;
        case Channel::B: return b;
    }
    return 0;
}

Plane::Plane(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    require_positive(width, height);
    cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Plane::Plane(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
    require_positive(width, height);
    if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw DimensionMismatch("plane cell count " + std::to_string(cells_.size()) + " does not match " +
                                std::to_string(width) + "x" + std::to_string(height));
    }
}

ArgbMatrix::ArgbMatrix(int width, int height) : ArgbMatrix(width, height, Cell{}) {}

ArgbMatrix::ArgbMatrix(int width, int height, Cell fill) : width_(width), height_(height) {
    require_positive(width, height);
    for (Channel c : kAllChannels) {
        planes_[static_cast<std::size_t>(c)] = Plane(width, height, fill[c]);
    }
}

Cell ArgbMatrix::cell(int x, int y) const {
    return Cell{at(Channel::A, x, y), at(Channel::R, x, y), at(Channel::G, x, y), at(Channel::B, x, y)};
}

void ArgbMatrix::set_cell(int x, int y, Cell v) {
    at(Channel::A, x, y) = v.a;
    at(Channel::R, x, y) = v.r;
    at(Channel::G, x, y) = v.g;
    at(Channel::B, x, y) = v.b;
}

std::tuple<Plane, Plane, Plane, Plane> unpack(const ArgbMatrix& m) {
    return {m.plane(Channel::A), m.plane(Channel::R), m.plane(Channel::G), m.plane(Channel::B)};
}

ArgbMatrix pack(Plane a, Plane r, Plane g, Plane b) {
    const std::array<const Plane*, 3> rest{&r, &g, &b};
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (!rest[i]->same_shape(a)) {
            throw DimensionMismatch(std::string("pack: plane ") + channel_name(kColorChannels[i]) + " is " +
                                    std::to_string(rest[i]->width()) + "x" + std::to_string(rest[i]->height()) +
                                    ", expected " + std::to_string(a.width()) + "x" + std::to_string(a.height()));
        }
    }
    require_positive(a.width(), a.height());
    ArgbMatrix out;
    out.width_ = a.width();
    out.height_ = a.height();
    out.planes_ = {std::move(a), std::move(r), std::move(g), std::move(b)};
    return out;
}

SolventOutputs solvent_split(const ArgbMatrix& m) {
    const Plane zero(m.width(), m.height(), 0);
    const auto& a = m.plane(Channel::A);
    const auto& r = m.plane(Channel::R);
    const auto& g = m.plane(Channel::G);
    return SolventOutputs{
        pack(a, r, g, zero),
        pack(a, zero, g, zero),
        pack(a, r, zero, zero),
    };
}

ArgbMatrix subtract_sat(const ArgbMatrix& lhs, const ArgbMatrix& rhs) {
    return zip_cells(lhs, rhs, "subtract_sat", [](std::uint8_t l, std::uint8_t r) {
        return static_cast<std::uint8_t>(l > r ? l - r : 0);
    });
}

ArgbMatrix add_sat(const ArgbMatrix& lhs, const ArgbMatrix& rhs) {
    return zip_cells(lhs, rhs, "add_sat", [](std::uint8_t l, std::uint8_t r) {
        return static_cast<std::uint8_t>(std::min(255, int{l} + int{r}));
    });
}

ArgbMatrix average(const ArgbMatrix& lhs, const ArgbMatrix& rhs) {
    return zip_cells(lhs, rhs, "average", [](std::uint8_t l, std::uint8_t r) {
        return static_cast<std::uint8_t>((int{l} + int{r}) / 2);
    });
}

ArgbMatrix tint_progress(const ArgbMatrix& m, double percent) {
    if (!(percent >= 0.0 && percent <= 100.0)) {
        throw std::out_of_range("tint_progress: percent " + std::to_string(percent) + " outside [0, 100]");
    }
    // 255 * p / 100 rather than 2.55 * p: 2.55 is not representable and 50% must land on 127.5.
    const std::uint8_t floor_level = clamp_round(percent * 255.0 / 100.0);
    ArgbMatrix out = m;
    for (auto& v : out.plane(Channel::R).cells()) {
        v = std::max(v, floor_level);
    }
    return out;
}

std::uint8_t luminance(const Cell& c) {
    return clamp_round(0.299 * c.r + 0.587 * c.g + 0.114 * c.b);
}

}  // namespace alchemy
