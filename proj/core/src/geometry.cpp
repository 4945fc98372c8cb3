#include "alchemy/geometry.hpp"

#include <cmath>
#include <string>

namespace alchemy {

ArgbMatrix mirror_y(const ArgbMatrix& m) {
    ArgbMatrix out(m.width(), m.height());
    const int w = m.width();
    for (Channel c : kAllChannels) {
        const auto& src = m.plane(c);
        auto& dst = out.plane(c);
        for (int y = 0; y < m.height(); ++y) {
            for (int x = 0; x < w; ++x) {
                dst.at(x, y) = src.at(w - 1 - x, y);
            }
        }
    }
    return out;
}

ArgbMatrix affine_transform(const ArgbMatrix& m, const AffineTransform2D& t) {
    const double det = t.determinant();
    if (det == 0.0 || !std::isfinite(det)) {
        throw SingularTransform("affine_transform: determinant is " + std::to_string(det));
    }

    ArgbMatrix out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            const double dx = x - t.tx;
            const double dy = y - t.ty;
            const double src_x = (t.d * dx - t.b * dy) / det;
            const double src_y = (-t.c * dx + t.a * dy) / det;
            const double rx = std::floor(src_x + 0.5);
            const double ry = std::floor(src_y + 0.5);
            if (rx < 0.0 || ry < 0.0 || rx >= m.width() || ry >= m.height()) {
                continue;
            }
            out.set_cell(x, y, m.cell(static_cast<int>(rx), static_cast<int>(ry)));
        }
    }
    return out;
}

ArgbMatrix repos(const ArgbMatrix& m, int dx, int dy) {
    ArgbMatrix out(m.width(), m.height());
    for (Channel c : kAllChannels) {
        const auto& src = m.plane(c);
        auto& dst = out.plane(c);
        for (int y = 0; y < m.height(); ++y) {
            const int sy = y - dy;
            if (sy < 0 || sy >= m.height()) continue;
            for (int x = 0; x < m.width(); ++x) {
                const int sx = x - dx;
                if (sx < 0 || sx >= m.width()) continue;
                dst.at(x, y) = src.at(sx, sy);
            }
        }
    }
    return out;
}

ArgbMatrix scale_about_center(const ArgbMatrix& m, double sx, double sy) {
    if (!(sx > 0.0) || !(sy > 0.0)) {
        throw std::invalid_argument("scale_about_center: scale factors must be positive, got " +
                                    std::to_string(sx) + ", " + std::to_string(sy));
    }
    const double cx = (m.width() - 1) / 2.0;
    const double cy = (m.height() - 1) / 2.0;
    return affine_transform(m, AffineTransform2D{sx, 0.0, 0.0, sy, cx * (1.0 - sx), cy * (1.0 - sy)});
}

}  // namespace alchemy
