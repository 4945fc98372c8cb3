#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "alchemy/matrix.hpp"
#include "alchemy/tracking.hpp"

namespace alchemy {

struct NoiseParams {
    std::uint64_t seed = 0;
    int octaves = 4;
    double persistence = 0.5;
    int base_cell_size = 16;

    void validate() const;
    friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

struct StarParams {
    double gain = 1.0;  ///< log-magnitude display gain
    double min_scale = 0.1;
    double max_scale = 1.0;

    void validate() const;
    friend bool operator==(const StarParams&, const StarParams&) = default;
};

/// x' = mu * x * (1 - x) on R, G, B with x = cell / 255. Alpha untouched.
ArgbMatrix logistic_transmute(const ArgbMatrix& m, double mu);

/// Value noise: one lattice per octave at spacing base_cell_size / 2^octave,
/// bilinearly interpolated, weighted by persistence^octave and divided by the
/// total weight. Grey (R = G = B), alpha 255, fully determined by the seed.
ArgbMatrix fractal_noise(int width, int height, const NoiseParams& p);

/// Interpolated single-octave layer in [0, 1), row-major. Exposed so the
/// octave sum can be checked layer by layer.
std::vector<double> noise_octave(int width, int height, std::uint64_t seed, int octave, double spacing);

/// Log-magnitude 2D spectrum of the luminance, folded into four mirrored
/// quadrants with DC at the frame centre. Grey, alpha 255.
ArgbMatrix fft_star(const ArgbMatrix& m, const StarParams& p);

/// Logistic parameter used by the burn stage for a given progress.
double burn_mu(double progress_percent);

/// Level-2 chain: transmute, subtract noise, average with noise, add star.
ArgbMatrix burn_stage(const ArgbMatrix& m, double progress_percent, const NoiseParams& noise_params,
                      const StarParams& star_params);

/// The dissolver expression pair, averaged per colour cell:
///   E2(x) = 4 * param * x * (1 - x)
///   E3(x) = |sin(pi * x)| ^ (1 / (1 + 3 * param))
/// Both are non-decreasing in param. Alpha untouched.
ArgbMatrix dissolve(const ArgbMatrix& m, double param);

/// Scale and place `star` on `m` following the tracked box. Returns `m`
/// unchanged when no box is available.
ArgbMatrix star_composite(const ArgbMatrix& m, const ArgbMatrix& star, const std::optional<BoundingBox>& box,
                          const StarParams& p);

/// Scale factor star_composite applies for a box on a frame of `frame_width` cells.
double star_scale(const BoundingBox& box, int frame_width, const StarParams& p);

}  // namespace alchemy
