#include "alchemy/fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>
#include <stdexcept>

namespace alchemy::fft {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

}  // namespace

int next_pow2(int n) {
    if (n < 1) throw std::invalid_argument("next_pow2: n must be >= 1");
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::complex<double>> real_forward(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    if (n == 0) throw std::invalid_argument("real_forward: empty input");
    const int bins = n / 2 + 1;

    auto in = allocate<double>(static_cast<std::size_t>(n));
    auto out = allocate<fftw_complex>(static_cast<std::size_t>(bins));
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(samples.begin(), samples.end(), in.get());
    fftw_execute(plan.get());

    std::vector<std::complex<double>> result(static_cast<std::size_t>(bins));
    for (int k = 0; k < bins; ++k) result[k] = {out[k][0], out[k][1]};
    return result;
}

std::vector<std::complex<double>> real_forward_2d(std::span<const double> field, int rows, int cols) {
    if (rows <= 0 || cols <= 0 || field.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw std::invalid_argument("real_forward_2d: field size does not match rows x cols");
    }
    const int half = cols / 2 + 1;
    auto in = allocate<double>(field.size());
    auto out = allocate<fftw_complex>(static_cast<std::size_t>(rows) * half);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_2d(rows, cols, in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(field.begin(), field.end(), in.get());
    fftw_execute(plan.get());

    // Expand the Hermitian half-spectrum: X[r][c] = conj(X[-r][-c]).
    std::vector<std::complex<double>> full(field.size());
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c < half) {
                const auto& v = out[static_cast<std::size_t>(r) * half + c];
                full[static_cast<std::size_t>(r) * cols + c] = {v[0], v[1]};
            } else {
                const int rr = (rows - r) % rows;
                const int cc = cols - c;
                const auto& v = out[static_cast<std::size_t>(rr) * half + cc];
                full[static_cast<std::size_t>(r) * cols + c] = {v[0], -v[1]};
            }
        }
    }
    return full;
}

}  // namespace alchemy::fft
