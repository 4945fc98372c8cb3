// mirror: command-line front end for the alchemical mirror engine.
//
//   mirror run --config cfg.json [--video-dir DIR | --synthetic PATTERN] [--wav FILE]
//              [--port N] [--record-dir DIR] [--headless] [--max-frames N]
//   mirror default-config --out cfg.json
//   mirror synth-wav --out tone.wav [--freq 440] [--amplitude 0.5] [--seconds 30]

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <memory>
#include <optional>

#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/frame_source.hpp"
#include "alchemy/gateway/json_codec.hpp"
#include "alchemy/gateway/recorder.hpp"
#include "alchemy/gateway/runner.hpp"
#include "alchemy/gateway/service.hpp"
#include "alchemy/gateway/wav.hpp"
#include "alchemy/session.hpp"

namespace gw = alchemy::gateway;

namespace {

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

struct RunArgs {
    std::string config_path;
    std::string video_dir;
    std::string synthetic;
    std::string wav_path;
    int port = -1;
    std::string record_dir;
    bool headless = false;
    std::optional<std::uint64_t> max_frames;
    std::uint64_t seed = 1;
};

int run(const RunArgs& args) {
    const alchemy::EngineConfig cfg = gw::load_config(args.config_path);

    std::unique_ptr<gw::FrameSource> source;
    if (!args.video_dir.empty()) {
        source = std::make_unique<gw::ImageSequenceSource>(gw::read_frame_sequence(args.video_dir, cfg.target_fps));
    } else {
        const auto pattern = gw::parse_pattern(args.synthetic.empty() ? "glove" : args.synthetic);
        if (!pattern) {
            std::cerr << "unknown synthetic pattern '" << args.synthetic << "' (gradient, glove, noise, solid)\n";
            return 2;
        }
        source = std::make_unique<gw::SyntheticSource>(
            gw::SyntheticOptions{*pattern, args.seed, cfg.frame_width, cfg.frame_height, cfg.target_fps, std::nullopt});
    }

    std::optional<gw::AudioClip> audio;
    if (!args.wav_path.empty()) audio = gw::read_wav(args.wav_path);

    if (args.headless && !audio && !args.max_frames && args.video_dir.empty()) {
        std::cerr << "a headless synthetic run needs --wav or --max-frames to know when to stop\n";
        return 2;
    }

    alchemy::Session session(cfg);
    std::shared_ptr<gw::Recorder> recorder;
    if (!args.record_dir.empty()) {
        recorder = std::make_shared<gw::Recorder>(args.record_dir, cfg.target_fps, cfg.frame_width, cfg.frame_height);
    }

    std::unique_ptr<gw::Service> service;
    if (args.port >= 0) {
        service = std::make_unique<gw::Service>(session, recorder,
                                                gw::ServiceOptions{"0.0.0.0", static_cast<std::uint16_t>(args.port)});
        service->start();
        std::cerr << "control plane listening on port " << service->port() << "\n";
    }

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);

    gw::RunOptions opts;
    opts.headless = args.headless;
    opts.max_frames = args.max_frames;
    opts.cancel = &g_interrupted;
    int last_level = 0;
    opts.on_frame = [&](const alchemy::FrameResult& r) {
        if (r.snapshot.level != last_level) {
            last_level = r.snapshot.level;
            std::cout << gw::to_json(r.snapshot).dump() << "\n";
        }
    };

    const gw::RunSummary summary = gw::run_session(session, *source, audio ? &*audio : nullptr, recorder, opts);
    session.close();
    if (service) service->stop();

    gw::json out{
        {"frames", summary.frames},
        {"audio_ticks", summary.audio_ticks},
        {"final_level", summary.final_progress.level},
        {"final_percent", summary.final_progress.percent},
        {"render_fps", summary.render_fps},
        {"wall_seconds", summary.wall_seconds},
    };
    gw::json changes = gw::json::array();
    for (const auto& c : summary.level_changes) {
        changes.push_back({{"frame_index", c.frame_index}, {"timestamp_ms", c.timestamp_ms}, {"level", c.level}});
    }
    out["level_changes"] = changes;
    if (summary.manifest) out["recording"] = gw::to_json(*summary.manifest);
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alchemical mirror engine"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run the engine on a video source");
    run_cmd->add_option("--config", run_args.config_path, "JSON engine configuration")->required()->check(CLI::ExistingFile);
    auto* video_opt = run_cmd->add_option("--video-dir", run_args.video_dir, "Directory of numbered PNG frames");
    auto* synth_opt = run_cmd->add_option("--synthetic", run_args.synthetic, "Synthetic pattern: gradient, glove, noise, solid");
    video_opt->excludes(synth_opt);
    run_cmd->add_option("--wav", run_args.wav_path, "Microphone stand-in: PCM16 or float32 WAV")->check(CLI::ExistingFile);
    run_cmd->add_option("--port", run_args.port, "Serve HTTP/WebSocket control plane on this port")
        ->check(CLI::Range(0, 65535));
    run_cmd->add_option("--record-dir", run_args.record_dir, "Record output frames as PNGs here");
    run_cmd->add_flag("--headless", run_args.headless, "Simulated clock, no pacing");
    run_cmd->add_option("--max-frames", run_args.max_frames, "Stop after this many frames");
    run_cmd->add_option("--seed", run_args.seed, "Seed for synthetic sources");

    std::string config_out;
    auto* defaults_cmd = app.add_subcommand("default-config", "Write the default configuration as JSON");
    defaults_cmd->add_option("--out", config_out, "Output path (stdout when omitted)");

    std::string wav_out;
    double freq = 440.0, amplitude = 0.5, seconds = 30.0;
    int rate = 44100;
    auto* synth_cmd = app.add_subcommand("synth-wav", "Write a sine tone as 16-bit PCM WAV");
    synth_cmd->add_option("--out", wav_out, "Output path")->required();
    synth_cmd->add_option("--freq", freq, "Frequency in Hz")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--amplitude", amplitude, "Peak amplitude")->check(CLI::Range(0.0, 1.0));
    synth_cmd->add_option("--seconds", seconds, "Duration")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--rate", rate, "Sample rate")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return run(run_args);
        if (*defaults_cmd) {
            if (config_out.empty()) {
                std::cout << gw::to_json(alchemy::EngineConfig{}).dump(2) << "\n";
            } else {
                gw::save_config(config_out, alchemy::EngineConfig{});
            }
            return 0;
        }
        if (*synth_cmd) {
            gw::write_wav(wav_out, gw::synth_sine(freq, amplitude, seconds, rate), rate, 1);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
