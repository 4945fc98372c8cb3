#include "alchemy/effects.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "alchemy/fft.hpp"
#include "alchemy/geometry.hpp"

namespace alchemy {

namespace {

template <typename Fn>
ArgbMatrix map_color_cells(const ArgbMatrix& m, Fn fn) {
    ArgbMatrix out = m;
    for (Channel c : kColorChannels) {
        for (auto& v : out.plane(c).cells()) {
            v = clamp_round(255.0 * fn(v / 255.0));
        }
    }
    return out;
}

ArgbMatrix grey_field(int width, int height, std::span<const std::uint8_t> values) {
    Plane grey(width, height, std::vector<std::uint8_t>(values.begin(), values.end()));
    return pack(Plane(width, height, 255), grey, grey, grey);
}

// Distance, in cells, from the centre line of an axis of length n. The two
// middle cells of an even axis both map to 0.
int fold_index(int i, int n) { return std::abs(2 * i - (n - 1)) / 2; }

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

}  // namespace

void NoiseParams::validate() const {
    if (octaves < 1) throw std::invalid_argument("noise.octaves must be >= 1");
    if (!(persistence > 0.0 && persistence <= 1.0)) throw std::invalid_argument("noise.persistence must be in (0, 1]");
    if (base_cell_size < 2) throw std::invalid_argument("noise.base_cell_size must be >= 2");
}

void StarParams::validate() const {
    if (!(gain > 0.0)) throw std::invalid_argument("star.gain must be positive");
    if (!(min_scale > 0.0 && min_scale < max_scale)) {
        throw std::invalid_argument("star scales must satisfy 0 < min_scale < max_scale");
    }
}

ArgbMatrix logistic_transmute(const ArgbMatrix& m, double mu) {
    if (!(mu >= 0.0 && mu <= 4.0)) {
        throw std::out_of_range("logistic_transmute: mu " + std::to_string(mu) + " outside [0, 4]");
    }
    return map_color_cells(m, [mu](double x) { return mu * x * (1.0 - x); });
}

std::vector<double> noise_octave(int width, int height, std::uint64_t seed, int octave, double spacing) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("noise_octave: dimensions must be positive");
    if (!(spacing >= 1.0)) throw std::invalid_argument("noise_octave: spacing must be >= 1");

    const int nx = static_cast<int>(std::floor((width - 1) / spacing)) + 2;
    const int ny = static_cast<int>(std::floor((height - 1) / spacing)) + 2;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(octave)};
    std::mt19937_64 gen(seq);
    std::vector<double> lattice(static_cast<std::size_t>(nx) * ny);
    for (auto& v : lattice) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;

    auto node = [&](int ix, int iy) { return lattice[static_cast<std::size_t>(iy) * nx + ix]; };
    std::vector<double> layer(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        const double fy = y / spacing;
        const int iy = static_cast<int>(std::floor(fy));
        const double ty = fy - iy;
        for (int x = 0; x < width; ++x) {
            const double fx = x / spacing;
            const int ix = static_cast<int>(std::floor(fx));
            const double tx = fx - ix;
            const double top = node(ix, iy) + (node(ix + 1, iy) - node(ix, iy)) * tx;
            const double bottom = node(ix, iy + 1) + (node(ix + 1, iy + 1) - node(ix, iy + 1)) * tx;
            layer[static_cast<std::size_t>(y) * width + x] = top + (bottom - top) * ty;
        }
    }
    return layer;
}

ArgbMatrix fractal_noise(int width, int height, const NoiseParams& p) {
    p.validate();
    std::vector<double> sum(static_cast<std::size_t>(width) * height, 0.0);
    double total_weight = 0.0;
    double weight = 1.0;
    for (int o = 0; o < p.octaves; ++o) {
        const double spacing = std::max(1.0, std::ldexp(static_cast<double>(p.base_cell_size), -o));
        const auto layer = noise_octave(width, height, p.seed, o, spacing);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += weight * layer[i];
        total_weight += weight;
        weight *= p.persistence;
    }
    std::vector<std::uint8_t> values(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) values[i] = clamp_round(255.0 * sum[i] / total_weight);
    return grey_field(width, height, values);
}

ArgbMatrix fft_star(const ArgbMatrix& m, const StarParams& p) {
    p.validate();
    const int w = m.width();
    const int h = m.height();
    const int rows = fft::next_pow2(h);
    const int cols = fft::next_pow2(w);

    std::vector<double> field(static_cast<std::size_t>(rows) * cols, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            field[static_cast<std::size_t>(y) * cols + x] = luminance(m.cell(x, y));
        }
    }
    const auto spectrum = fft::real_forward_2d(field, rows, cols);

    // Only the low-frequency corner that the fold can reach is displayed.
    const int qw = (w + 1) / 2;
    const int qh = (h + 1) / 2;
    std::vector<double> corner(static_cast<std::size_t>(qw) * qh);
    double peak = 0.0;
    for (int ky = 0; ky < qh; ++ky) {
        for (int kx = 0; kx < qw; ++kx) {
            const double s = std::log1p(p.gain * std::abs(spectrum[static_cast<std::size_t>(ky) * cols + kx]));
            corner[static_cast<std::size_t>(ky) * qw + kx] = s;
            peak = std::max(peak, s);
        }
    }

    std::vector<std::uint8_t> values(static_cast<std::size_t>(w) * h, 0);
    if (peak > 0.0) {
        for (int y = 0; y < h; ++y) {
            const int ky = fold_index(y, h);
            for (int x = 0; x < w; ++x) {
                const int kx = fold_index(x, w);
                values[static_cast<std::size_t>(y) * w + x] =
                    clamp_round(255.0 * corner[static_cast<std::size_t>(ky) * qw + kx] / peak);
            }
        }
    }
    return grey_field(w, h, values);
}

double burn_mu(double progress_percent) {
    if (!(progress_percent >= 0.0 && progress_percent <= 100.0)) {
        throw std::out_of_range("burn_stage: progress " + std::to_string(progress_percent) + " outside [0, 100]");
    }
    return 2.0 + 2.0 * progress_percent / 100.0;
}

ArgbMatrix burn_stage(const ArgbMatrix& m, double progress_percent, const NoiseParams& noise_params,
                      const StarParams& star_params) {
    const ArgbMatrix transmuted = logistic_transmute(m, burn_mu(progress_percent));
    const ArgbMatrix noise = fractal_noise(m.width(), m.height(), noise_params);
    const ArgbMatrix mixed = average(subtract_sat(transmuted, noise), noise);
    return add_sat(mixed, fft_star(m, star_params));
}

ArgbMatrix dissolve(const ArgbMatrix& m, double param) {
    if (!(param >= 0.0 && param <= 1.0)) {
        throw std::out_of_range("dissolve: param " + std::to_string(param) + " outside [0, 1]");
    }
    // Both terms are non-decreasing in param for every x, so brighter
    // progress never darkens a cell.
    const double sharpness = 1.0 / (1.0 + 3.0 * param);
    return map_color_cells(m, [param, sharpness](double x) {
        const double logistic = 4.0 * param * x * (1.0 - x);
        const double sine = std::pow(std::abs(std::sin(std::numbers::pi * x)), sharpness);
        return (logistic + sine) / 2.0;
    });
}

double star_scale(const BoundingBox& box, int frame_width, const StarParams& p) {
    return std::clamp(box.width / static_cast<double>(frame_width), p.min_scale, p.max_scale);
}

ArgbMatrix star_composite(const ArgbMatrix& m, const ArgbMatrix& star, const std::optional<BoundingBox>& box,
                          const StarParams& p) {
    if (!m.same_shape(star)) {
        throw DimensionMismatch("star_composite: frame " + std::to_string(m.width()) + "x" +
                                std::to_string(m.height()) + " vs star " + std::to_string(star.width()) + "x" +
                                std::to_string(star.height()));
    }
    if (!box) return m;
    p.validate();
    const double s = star_scale(*box, m.width(), p);
    const int dx = round_half_up(box->center_x - (m.width() - 1) / 2.0);
    const int dy = round_half_up(box->center_y - (m.height() - 1) / 2.0);
    return add_sat(m, repos(scale_about_center(star, s, s), dx, dy));
}

}  // namespace alchemy
