#include <benchmark/benchmark.h>

#include <random>

#include "alchemy/effects.hpp"
#include "alchemy/engine.hpp"

namespace {

using namespace alchemy;

ArgbMatrix noise_frame(int w, int h) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    ArgbMatrix m(w, h);
    for (Channel c : kAllChannels) {
        for (auto& v : m.plane(c).cells()) v = static_cast<std::uint8_t>(byte(rng));
    }
    return m;
}

void BM_ProcessFrame(benchmark::State& state) {
    EngineConfig cfg;
    const int level = static_cast<int>(state.range(0));
    const auto in = noise_frame(cfg.frame_width, cfg.frame_height);
    const ColorRange range{200, 0, 200, 255, 60, 255};
    for (auto _ : state) {
        auto r = process_frame(in, {level, 50.0}, range, cfg);
        benchmark::DoNotOptimize(r.frame);
    }
    state.counters["fps"] = benchmark::Counter(static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ProcessFrame)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_FftStar(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    const auto in = noise_frame(w, w * 3 / 4);
    const StarParams p;
    for (auto _ : state) {
        auto s = fft_star(in, p);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_FftStar)->Arg(64)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);

void BM_FractalNoise(benchmark::State& state) {
    const NoiseParams p;
    for (auto _ : state) {
        auto n = fractal_noise(320, 240, p);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_FractalNoise)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
