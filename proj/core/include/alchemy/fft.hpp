#pragma once

#include <complex>
#include <span>
#include <vector>

namespace alchemy::fft {

/// Smallest power of two >= n (n >= 1).
int next_pow2(int n);

/// Forward DFT of a real sequence; returns the n/2 + 1 non-negative bins.
/// Unnormalised: X[k] = sum_n x[n] e^{-2 pi i k n / N}.
std::vector<std::complex<double>> real_forward(std::span<const double> samples);

/// Forward 2D DFT of a real rows x cols field (row-major). Returns the full
/// rows x cols complex spectrum, unnormalised.
std::vector<std::complex<double>> real_forward_2d(std::span<const double> field, int rows, int cols);

}  // namespace alchemy::fft
