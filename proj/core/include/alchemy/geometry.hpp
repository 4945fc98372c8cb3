#pragma once

#include <stdexcept>

#include "alchemy/matrix.hpp"

namespace alchemy {

class SingularTransform : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Forward map (x, y) -> (a*x + b*y + tx, c*x + d*y + ty).
struct AffineTransform2D {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;
    double tx = 0.0;
    double ty = 0.0;

    double determinant() const { return a * d - b * c; }

    static AffineTransform2D identity() { return {}; }
    static AffineTransform2D translation(double dx, double dy) { return {1.0, 0.0, 0.0, 1.0, dx, dy}; }
    /// Left-right flip of a frame `width` cells wide.
    static AffineTransform2D horizontal_flip(int width) { return {-1.0, 0.0, 0.0, 1.0, width - 1.0, 0.0}; }
};

/// Left-right flip: out(x, y) = in(width - 1 - x, y).
ArgbMatrix mirror_y(const ArgbMatrix& m);

/// Nearest-neighbour resampling through the inverse map. Cells whose source
/// falls outside the frame are zero in every plane.
ArgbMatrix affine_transform(const ArgbMatrix& m, const AffineTransform2D& t);

/// out(x, y) = in(x - dx, y - dy), zero outside.
ArgbMatrix repos(const ArgbMatrix& m, int dx, int dy);

/// Scales content about ((w-1)/2, (h-1)/2). Throws std::invalid_argument for sx or sy <= 0.
ArgbMatrix scale_about_center(const ArgbMatrix& m, double sx, double sy);

}  // namespace alchemy
