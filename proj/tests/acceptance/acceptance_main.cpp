// One line per criterion: PASS/FAIL, name, and what was measured.
// Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alchemy/audio.hpp"
#include "alchemy/effects.hpp"
#include "alchemy/engine.hpp"
#include "alchemy/geometry.hpp"
#include "alchemy/matrix.hpp"
#include "alchemy/session.hpp"
#include "alchemy/tracking.hpp"
#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/frame_source.hpp"
#include "alchemy/gateway/recorder.hpp"
#include "alchemy/gateway/runner.hpp"
#include "alchemy/gateway/wav.hpp"
#include "support.hpp"

namespace {

using namespace alchemy;
using namespace alchemy::gateway;
using alchemy::testing::oracle_round;
using alchemy::testing::random_matrix;
using alchemy::testing::TempDir;

struct Outcome {
    bool ok = true;
    std::string detail;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

using Scalar = std::function<int(int)>;
using Binary = std::function<int(int, int)>;

bool matches_colour_oracle(const ArgbMatrix& in, const ArgbMatrix& out, const Scalar& f) {
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const Cell a = in.cell(x, y);
            const Cell b = out.cell(x, y);
            if (b.a != a.a || b.r != f(a.r) || b.g != f(a.g) || b.b != f(a.b)) return false;
        }
    }
    return true;
}

bool matches_binary_oracle(const ArgbMatrix& l, const ArgbMatrix& r, const ArgbMatrix& out, const Binary& f) {
    for (Channel c : kAllChannels) {
        for (int y = 0; y < l.height(); ++y) {
            for (int x = 0; x < l.width(); ++x) {
                if (out.at(c, x, y) != f(l.at(c, x, y), r.at(c, x, y))) return false;
            }
        }
    }
    return true;
}

Outcome mirror_involution() {
    std::mt19937_64 rng(1001);
    int failures = 0;
    const AffineTransform2D flip{-1.0, 0.0, 0.0, 1.0, 31.0, 0.0};
    for (int i = 0; i < 200; ++i) {
        const auto m = random_matrix(32, 32, rng);
        const auto once = mirror_y(m);
        if (mirror_y(once) != m) ++failures;
        if (affine_transform(m, flip) != once) ++failures;
        for (int y = 0; y < 32 && failures == 0; ++y) {
            for (int x = 0; x < 32; ++x) {
                if (once.cell(x, y) != m.cell(31 - x, y)) {
                    ++failures;
                    break;
                }
            }
        }
    }
    return {failures == 0, fmt("200 random 32x32, %d mismatches", failures)};
}

Outcome matrix_op_oracles() {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> mu_dist(0.0, 4.0);
    std::uniform_real_distribution<double> p_dist(0.0, 1.0);
    int bad_sub = 0, bad_add = 0, bad_avg = 0, bad_log = 0, bad_dis = 0;
    for (int i = 0; i < 100; ++i) {
        const auto l = random_matrix(16, 16, rng);
        const auto r = random_matrix(16, 16, rng);
        bad_sub += !matches_binary_oracle(l, r, subtract_sat(l, r), [](int a, int b) { return std::max(0, a - b); });
        bad_add += !matches_binary_oracle(l, r, add_sat(l, r), [](int a, int b) { return std::min(255, a + b); });
        bad_avg += !matches_binary_oracle(l, r, average(l, r), [](int a, int b) { return (a + b) >> 1; });

        const double mu = i == 0 ? 4.0 : mu_dist(rng);
        bad_log += !matches_colour_oracle(l, logistic_transmute(l, mu), [mu](int v) {
            const double x = v / 255.0;
            return oracle_round(255.0 * (mu * x * (1.0 - x)));
        });

        const double p = i == 0 ? 0.0 : (i == 1 ? 1.0 : p_dist(rng));
        bad_dis += !matches_colour_oracle(l, dissolve(l, p), [p](int v) {
            const double x = v / 255.0;
            const double e2 = 4.0 * p * x * (1.0 - x);
            const double e3 = std::pow(std::abs(std::sin(std::numbers::pi * x)), 1.0 / (1.0 + 3.0 * p));
            return oracle_round(255.0 * ((e2 + e3) / 2.0));
        });
    }
    const int total = bad_sub + bad_add + bad_avg + bad_log + bad_dis;
    return {total == 0, fmt("100 random 16x16 pairs; mismatching matrices sub=%d add=%d avg=%d logistic=%d dissolve=%d",
                            bad_sub, bad_add, bad_avg, bad_log, bad_dis)};
}

Outcome solvent() {
    std::mt19937_64 rng(1003);
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        const auto m = random_matrix(24, 16, rng);
        const auto out = solvent_split(m).arg;
        for (int y = 0; y < m.height(); ++y) {
            for (int x = 0; x < m.width(); ++x) {
                const Cell a = m.cell(x, y);
                const Cell b = out.cell(x, y);
                if (b.b != 0 || b.a != a.a || b.r != a.r || b.g != a.g) ++failures;
            }
        }
    }
    return {failures == 0, fmt("100 random 24x16, %d bad cells", failures)};
}

std::optional<BoundingBox> scan_bounds(const ArgbMatrix& m, const ColorRange& g) {
    int x0 = m.width(), y0 = m.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            const Cell c = m.cell(x, y);
            if (c.r < g.min_r || c.r > g.max_r || c.g < g.min_g || c.g > g.max_g || c.b < g.min_b || c.b > g.max_b) {
                continue;
            }
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) return std::nullopt;
    BoundingBox b;
    b.min_x = x0;
    b.min_y = y0;
    b.max_x = x1;
    b.max_y = y1;
    b.center_x = (x0 + x1) / 2.0;
    b.center_y = (y0 + y1) / 2.0;
    b.width = x1 - x0;
    b.height = y1 - y0;
    return b;
}

Outcome bounds_oracle() {
    std::mt19937_64 rng(1004);
    int failures = 0, found = 0;
    for (int i = 0; i < 200; ++i) {
        const auto m = random_matrix(20, 15, rng);
        ColorRange g;
        std::uniform_int_distribution<int> lo(0, 255);
        std::uniform_int_distribution<int> span(0, 120);
        auto window = [&](std::uint8_t& a, std::uint8_t& b) {
            const int s = lo(rng);
            a = static_cast<std::uint8_t>(s);
            b = static_cast<std::uint8_t>(std::min(255, s + span(rng)));
        };
        window(g.min_r, g.max_r);
        window(g.min_g, g.max_g);
        window(g.min_b, g.max_b);
        const auto expected = scan_bounds(m, g);
        found += expected.has_value();
        if (find_bounds(m, g) != expected) ++failures;
    }
    ArgbMatrix fixture(8, 8, Cell{255, 0, 0, 0});
    fixture.set_cell(1, 1, Cell{255, 255, 0, 255});
    fixture.set_cell(6, 5, Cell{255, 255, 0, 255});
    const auto b = find_bounds(fixture, ColorRange{231, 0, 231, 255, 24, 255});
    const bool fixture_ok = b && b->center_x == 3.5 && b->center_y == 3.0 && b->width == 5.0 && b->height == 4.0;
    return {failures == 0 && fixture_ok,
            fmt("200 random pairs (%d non-empty), %d mismatches; fixture centre (%.1f,%.1f) size %.0fx%.0f", found,
                failures, b ? b->center_x : -1.0, b ? b->center_y : -1.0, b ? b->width : -1.0,
                b ? b->height : -1.0)};
}

Outcome pitch() {
    constexpr int rate = 44100;
    constexpr double amp = 0.5;
    double worst_hz = 0.0, worst_rms = 0.0;
    bool ok = true;
    for (int k = 0; k < 24; ++k) {
        const double f = 110.0 * std::pow(16.0, k / 23.0);
        std::vector<float> s(kAnalysisWindow);
        for (std::size_t n = 0; n < s.size(); ++n) {
            s[n] = static_cast<float>(amp * std::sin(2.0 * std::numbers::pi * f * n / rate));
        }
        const auto r = estimate_pitch_amplitude(AudioFrame{s, rate});
        if (!r.pitch_hz) {
            ok = false;
            continue;
        }
        const double err = std::abs(*r.pitch_hz - f);
        const double rms_err = std::abs(r.amplitude_rms - amp / std::sqrt(2.0)) / (amp / std::sqrt(2.0));
        worst_hz = std::max(worst_hz, err);
        worst_rms = std::max(worst_rms, rms_err);
        ok = ok && err <= 3.0 && rms_err <= 0.01;
    }
    return {ok, fmt("24 tones 110-1760 Hz, worst pitch error %.3f Hz, worst RMS error %.3f%%", worst_hz,
                    100.0 * worst_rms)};
}

std::vector<ProgressState> run_script(const std::vector<PitchReading>& script, const StabilityConfig& cfg) {
    std::vector<ProgressState> trace;
    ProgressState s;
    std::int64_t t = 0;
    for (const auto& r : script) {
        s = stability_step(s, r, t, cfg);
        trace.push_back(s);
        t += cfg.interval_ms;
    }
    return trace;
}

Outcome stability_fsm() {
    StabilityConfig cfg;
    const PitchReading tone{440.0, 0.3};
    std::vector<std::string> problems;

    // Steady tone: level-ups land exactly when the stable run reaches each duration.
    std::vector<PitchReading> steady(200, tone);
    const auto trace = run_script(steady, cfg);
    std::vector<std::int64_t> ups;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].level > trace[i - 1].level) ups.push_back(static_cast<std::int64_t>(i) * cfg.interval_ms);
    }
    const std::vector<std::int64_t> expected_ups{5000, 13000, 25000};
    if (ups != expected_ups) problems.push_back("level-up times");

    // One out-of-tolerance reading mid-level resets percent.
    auto jumpy = steady;
    jumpy[40] = PitchReading{600.0, 0.3};
    const auto reset = run_script(jumpy, cfg);
    if (reset[39].percent <= 0.0 || reset[40].percent != 0.0 || reset[40].level != reset[39].level) {
        problems.push_back("single-reading reset");
    }
    auto loud = steady;
    loud[40] = PitchReading{440.0, 0.6};
    if (run_script(loud, cfg)[40].percent != 0.0) problems.push_back("amplitude reset");

    // Random scripts: level never decreases, percent in range, replay identical.
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PitchReading> script;
        for (int i = 0; i < 300; ++i) {
            const double roll = u(rng);
            if (roll < 0.03) {
                script.push_back(PitchReading{std::nullopt, 0.001});
            } else if (roll < 0.08) {
                script.push_back(PitchReading{200.0 + 600.0 * u(rng), 0.3});
            } else {
                script.push_back(PitchReading{440.0 * (1.0 + 0.02 * (u(rng) - 0.5)), 0.3});
            }
        }
        const auto a = run_script(script, cfg);
        if (a != run_script(script, cfg)) problems.push_back("non-deterministic");
        for (std::size_t i = 1; i < a.size(); ++i) {
            if (a[i].level < a[i - 1].level || a[i].percent < 0.0 || a[i].percent > 100.0) {
                problems.push_back("monotone level / percent range");
                break;
            }
        }
    }
    std::string detail = fmt("level-ups at %s ms", [&] {
        std::string s;
        for (auto t : ups) s += (s.empty() ? "" : ",") + std::to_string(t);
        return s;
    }().c_str());
    for (const auto& p : problems) detail += "; broke: " + p;
    return {problems.empty(), detail};
}

bool quadrant_symmetric(const ArgbMatrix& m) {
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            const Cell c = m.cell(x, y);
            if (c != m.cell(m.width() - 1 - x, y) || c != m.cell(x, m.height() - 1 - y)) return false;
        }
    }
    return true;
}

Outcome fft_star_checks() {
    const StarParams p;
    std::vector<std::string> problems;

    for (auto [w, h] : {std::pair{16, 16}, std::pair{32, 8}, std::pair{64, 64}}) {
        const auto star = fft_star(ArgbMatrix(w, h, Cell{255, 90, 90, 90}), p);
        int maxima = 0;
        bool placed = true;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (star.at(Channel::R, x, y) != 255) continue;
                ++maxima;
                placed = placed && (x == w / 2 - 1 || x == w / 2) && (y == h / 2 - 1 || y == h / 2);
            }
        }
        if (maxima != 4 || !placed) problems.push_back(fmt("constant %dx%d", w, h));
    }

    ArgbMatrix impulse(32, 32, Cell{255, 0, 0, 0});
    impulse.set_cell(5, 9, Cell{255, 255, 255, 255});
    const auto flat = fft_star(impulse, p);
    const auto [lo, hi] = std::minmax_element(flat.plane(Channel::R).cells().begin(), flat.plane(Channel::R).cells().end());
    if (*hi - *lo > 1) problems.push_back("impulse spread");

    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<int> dim(2, 40);
    int asymmetric = 0;
    for (int i = 0; i < 50; ++i) {
        const auto m = random_matrix(dim(rng), dim(rng), rng);
        asymmetric += !quadrant_symmetric(fft_star(m, p));
    }
    if (asymmetric) problems.push_back(fmt("%d asymmetric", asymmetric));

    std::string detail = fmt("constant 16x16/32x8/64x64, impulse spread %d, 50 random symmetric", *hi - *lo);
    for (const auto& s : problems) detail += "; broke: " + s;
    return {problems.empty(), detail};
}

BoundingBox centred_box(double cx, double cy, double w) {
    BoundingBox b;
    b.center_x = cx;
    b.center_y = cy;
    b.width = w;
    b.height = w;
    b.min_x = static_cast<int>(std::floor(cx - w / 2.0));
    b.max_x = static_cast<int>(std::ceil(cx + w / 2.0));
    b.min_y = static_cast<int>(std::floor(cy - w / 2.0));
    b.max_y = static_cast<int>(std::ceil(cy + w / 2.0));
    return b;
}

std::pair<int, int> brightest(const ArgbMatrix& m) {
    std::pair<int, int> at{0, 0};
    int best = -1;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (m.at(Channel::R, x, y) > best) {
                best = m.at(Channel::R, x, y);
                at = {x, y};
            }
        }
    }
    return at;
}

Outcome star_monotonicity() {
    SyntheticOptions o;
    o.width = 64;
    o.height = 64;
    const SyntheticSource src(o);
    const StarParams p;
    const auto star = fft_star(src.frame_at(0), p);
    const ArgbMatrix black(64, 64, Cell{255, 0, 0, 0});
    constexpr int threshold = 128;

    std::vector<int> counts;
    for (int w : {8, 16, 32, 64}) {
        const auto out = star_composite(black, star, centred_box(31.5, 31.5, w), p);
        counts.push_back(static_cast<int>(std::count_if(out.plane(Channel::R).cells().begin(),
                                                        out.plane(Channel::R).cells().end(),
                                                        [](std::uint8_t v) { return v >= threshold; })));
    }
    const bool monotone = std::is_sorted(counts.begin(), counts.end());

    const auto a = brightest(star_composite(black, star, centred_box(26.5, 31.5, 32), p));
    const auto b = brightest(star_composite(black, star, centred_box(36.5, 31.5, 32), p));
    const int sx = b.first - a.first, sy = b.second - a.second;
    return {monotone && sx == 10 && sy == 0,
            fmt("cells >= %d for widths 8/16/32/64: %d/%d/%d/%d; brightest moved (%+d,%+d)", threshold, counts[0],
                counts[1], counts[2], counts[3], sx, sy)};
}

double r_mean(const ArgbMatrix& m) {
    double sum = 0.0;
    for (auto v : m.plane(Channel::R).cells()) sum += v;
    return sum / static_cast<double>(m.cell_count());
}

Outcome engine_routing() {
    EngineConfig cfg;
    cfg.frame_width = 16;
    cfg.frame_height = 16;
    std::mt19937_64 rng(1009);
    std::vector<std::string> problems;
    for (int i = 0; i < 10; ++i) {
        const auto in = random_matrix(16, 16, rng);
        const auto mirrored = mirror_y(in);
        if (process_frame(in, {1, 0.0}, std::nullopt, cfg).frame != mirrored) problems.push_back("level 1");
        const auto burn = tint_progress(
            add_sat(average(subtract_sat(logistic_transmute(mirrored, burn_mu(40.0)), fractal_noise(16, 16, cfg.noise)),
                            fractal_noise(16, 16, cfg.noise)),
                    fft_star(mirrored, cfg.star)),
            40.0);
        if (process_frame(in, {2, 40.0}, std::nullopt, cfg).frame != burn) problems.push_back("level 2");
        if (process_frame(in, {3, 70.0}, std::nullopt, cfg).frame != tint_progress(dissolve(mirrored, 0.7), 70.0)) {
            problems.push_back("level 3");
        }
        if (process_frame(in, {4, 0.0}, std::nullopt, cfg).frame != solvent_split(mirrored).arg) {
            problems.push_back("level 4");
        }
    }

    int non_monotone = 0;
    for (int i = 0; i < 10; ++i) {
        const auto in = random_matrix(16, 16, rng);
        for (int level = 1; level <= 3; ++level) {
            double prev = -1.0;
            for (int pct = 0; pct <= 100; ++pct) {
                const double mean = r_mean(process_frame(in, {level, double(pct)}, std::nullopt, cfg).frame);
                if (mean < prev) {
                    ++non_monotone;
                    break;
                }
                prev = mean;
            }
        }
    }
    if (non_monotone) problems.push_back(fmt("%d non-monotone R-mean curves", non_monotone));
    std::string detail = "10 fixtures x levels 1-4 vs hand chains; R-mean over 0..100% at levels 1-3";
    for (const auto& s : problems) detail += "; broke: " + s;
    return {problems.empty(), detail};
}

Outcome recorder_round_trip() {
    TempDir dir("accept-rec");
    std::mt19937_64 rng(1010);
    Recorder rec(dir.path(), 15.0, 32, 24);
    std::vector<ArgbMatrix> frames;
    for (int i = 0; i < 10; ++i) {
        frames.push_back(random_matrix(32, 24, rng));
        rec.write(frames.back());
    }
    const auto manifest = rec.stop();
    auto seq = read_frame_sequence(dir.path(), 15.0);
    int identical = 0;
    for (const auto& f : frames) identical += seq.next() == f;
    const bool exhausted = !seq.next();
    bool rejected = false;
    try {
        rec.write(frames.front());
    } catch (const WriteAfterStop&) {
        rejected = true;
    }
    const auto on_disk = read_manifest(dir / kManifestFile);
    const bool ok = identical == 10 && exhausted && rejected && manifest.frame_count == 10 && on_disk.frame_count == 10;
    return {ok, fmt("%d/10 frames identical, manifest frame_count %llu, write after stop %s", identical,
                    static_cast<unsigned long long>(on_disk.frame_count), rejected ? "rejected" : "accepted")};
}

Outcome end_to_end() {
    TempDir dir("accept-e2e");
    const auto wav = dir / "tone.wav";
    const auto samples = synth_sine(440.0, 0.5, 30.0, 44100);
    write_wav(wav, samples, 44100, 1);
    const AudioClip clip = read_wav(wav);

    EngineConfig cfg;
    cfg.frame_width = 64;
    cfg.frame_height = 64;
    Session session(cfg);
    SyntheticOptions o;
    o.width = 64;
    o.height = 64;
    o.fps = cfg.target_fps;
    SyntheticSource src(o);

    std::vector<Progress> trace;
    RunOptions opts;
    opts.on_frame = [&](const FrameResult& r) { trace.push_back({r.snapshot.level, r.snapshot.percent}); };
    const auto summary = run_session(session, src, &clip, nullptr, opts);

    bool monotone = true;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].level < trace[i - 1].level) monotone = false;
        if (trace[i].level == trace[i - 1].level && trace[i].percent < trace[i - 1].percent) monotone = false;
    }
    std::string changes;
    for (const auto& c : summary.level_changes) {
        changes += (changes.empty() ? "" : ", ") + fmt("L%d@%lldms", c.level, static_cast<long long>(c.timestamp_ms));
    }
    const bool levels_ok = summary.level_changes.size() == 3 && summary.level_changes[0].level == 2 &&
                           summary.level_changes[1].level == 3 && summary.level_changes[2].level == 4;
    const int final_level = trace.empty() ? 0 : trace.back().level;
    return {levels_ok && final_level == 4 && monotone,
            fmt("%llu frames, %llu ticks, %s; final level %d; percent trace %s",
                static_cast<unsigned long long>(summary.frames), static_cast<unsigned long long>(summary.audio_ticks),
                changes.c_str(), final_level, monotone ? "monotone" : "NOT monotone")};
}

Outcome throughput() {
    EngineConfig cfg;  // 320x240
    SyntheticOptions o;
    const SyntheticSource src(o);
    std::vector<ArgbMatrix> inputs;
    for (int i = 0; i < 8; ++i) inputs.push_back(src.frame_at(i));
    const auto range = ColorRange{200, 0, 200, 255, 60, 255};

    process_frame(inputs[0], {2, 50.0}, range, cfg);  // warm FFTW plans
    const auto start = std::chrono::steady_clock::now();
    int frames = 0;
    double elapsed = 0.0;
    while (frames < 30 || elapsed < 2.0) {
        const auto& in = inputs[frames % inputs.size()];
        const auto out = process_frame(in, {2, (frames % 100) * 1.0}, range, cfg);
        if (out.frame.cell_count() == 0) break;
        ++frames;
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const double fps = frames / elapsed;
    return {fps >= 15.0, fmt("level 2 at 320x240: %.1f fps over %d frames", fps, frames)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"mirror-involution", mirror_involution},
        {"matrix-op-oracles", matrix_op_oracles},
        {"solvent", solvent},
        {"find-bounds-oracle", bounds_oracle},
        {"pitch", pitch},
        {"stability-fsm", stability_fsm},
        {"fft-star", fft_star_checks},
        {"star-monotonicity", star_monotonicity},
        {"engine-routing", engine_routing},
        {"recorder-round-trip", recorder_round_trip},
        {"end-to-end-headless", end_to_end},
        {"throughput", throughput},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        failed += !r.ok;
        std::printf("%s %-20s %s\n", r.ok ? "PASS" : "FAIL", name, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
