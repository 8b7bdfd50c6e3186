// Command-line front end: simulate ITD signals, localize sources from an ITD
// CSV, and run Monte Carlo evaluations.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mssl/config_io.hpp"
#include "mssl/csv.hpp"
#include "mssl/dbscan.hpp"
#include "mssl/eval.hpp"
#include "mssl/ransac.hpp"
#include "mssl/rng.hpp"
#include "mssl/scene.hpp"
#include "mssl/wav_io.hpp"
#include "mssl/waveform.hpp"

namespace {

struct SimulateOpts {
  std::string scene_path;
  std::string out_path;
  mssl::ArrayConfig array;
  mssl::SimParams sim;
  std::string assignment = "uniform";
  std::string pathway = "geometric";
  std::string source_signal = "white";
  std::vector<std::string> wav_paths;
  double fs_hz = 44100.0;
  int frame_len = 2048;
  double mic_noise_sigma = 0.0;
};

struct LocalizeOpts {
  std::string itd_path;
  std::string out_path;
  std::string estimator = "both";
  mssl::ArrayConfig array;
  mssl::DbscanParams dbscan;
  mssl::RansacParams ransac;
  std::uint64_t seed = 0;
  std::string points_csv;
  std::string trace_csv;
};

struct EvalOpts {
  std::string config_path;
  std::string out_dir;
  bool seed_given = false;
  std::uint64_t seed = 0;
};

void add_array_flags(CLI::App* cmd, mssl::ArrayConfig& array) {
  cmd->add_option("--half-baseline", array.half_baseline_m,
                  "Half microphone separation b [m]")
      ->capture_default_str();
  cmd->add_option("--omega", array.omega_rad_s, "Rotation rate [rad/s]")
      ->capture_default_str();
  cmd->add_option("--samples-per-rotation", array.samples_per_rotation,
                  "ITD samples per rotation")
      ->capture_default_str();
  cmd->add_option("--sound-speed", array.sound_speed_m_s, "Speed of sound [m/s]")
      ->capture_default_str();
}

int run_simulate(const SimulateOpts& opt) {
  mssl::Scene scene = mssl::load_scene_json(opt.scene_path);
  mssl::SimParams sim = opt.sim;
  sim.assignment = opt.assignment == "power" ? mssl::AssignmentPolicy::kPowerWeighted
                                             : mssl::AssignmentPolicy::kUniform;

  mssl::ItdSignal itd;
  if (opt.pathway == "geometric") {
    itd = mssl::synthesize_itd(scene, opt.array, sim);
  } else {
    std::vector<mssl::Waveform> sources;
    if (!opt.wav_paths.empty()) {
      if (opt.wav_paths.size() != scene.sources.size())
        throw mssl::InvalidParam("need one --wav per scene source");
      for (const auto& p : opt.wav_paths) sources.push_back(mssl::read_wav_mono(p));
    } else {
      // Generated material: a few seconds per source, cycled frame by frame.
      const int n = static_cast<int>(opt.fs_hz * 4.0);
      for (std::size_t k = 0; k < scene.sources.size(); ++k) {
        const std::uint64_t wseed = mssl::derive_seed(sim.seed, 1000 + k);
        if (opt.source_signal == "white") {
          sources.push_back(mssl::white_noise(n, opt.fs_hz, wseed));
        } else {
          const double base = opt.fs_hz / 44100.0;
          const std::vector<double> freqs = {523.0 * base * (k + 1), 987.0 * base * (k + 1),
                                             1931.0 * base * (k + 1)};
          sources.push_back(mssl::multi_tone(n, opt.fs_hz, freqs, wseed));
        }
      }
    }
    itd = mssl::rotational_itd_track(scene, opt.array, sources, opt.frame_len, sim,
                                     opt.mic_noise_sigma);
  }

  mssl::write_itd_csv(opt.out_path, itd);
  std::cerr << "wrote " << itd.samples.size() << " samples to " << opt.out_path << "\n";
  return 0;
}

void print_rows(std::ostream& os, const char* name, const mssl::LocalizationResult& res) {
  char row[160];
  int rank = 1;
  for (const auto& e : res.estimates) {
    std::snprintf(row, sizeof row, "%s,%d,%.4f,%.4f,%d,%.2f\n", name, rank, e.theta_deg,
                  e.phi_deg, e.support, e.confidence_pct);
    os << row;
    ++rank;
  }
}

int run_localize(const LocalizeOpts& opt) {
  const mssl::ItdSignal itd = mssl::read_itd_csv(opt.itd_path, opt.array);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path);
    if (!file) throw mssl::IoError("cannot open " + opt.out_path + " for writing");
    os = &file;
  }
  *os << "estimator,rank,theta_deg,phi_deg,support,confidence_pct\n";

  if (opt.estimator == "dbscan" || opt.estimator == "both") {
    mssl::DbscanParams p = opt.dbscan;
    p.seed = opt.seed;
    mssl::DbscanDetail detail;
    const mssl::LocalizationResult res = mssl::localize_dbscan(itd, p, &detail);
    print_rows(*os, "dbscan", res);
    std::cerr << "dbscan: " << res.source_count << " source(s)\n";
    if (!opt.points_csv.empty())
      mssl::write_points_csv(opt.points_csv, detail.points, detail.labels);
  }
  if (opt.estimator == "ransac" || opt.estimator == "both") {
    mssl::RansacParams p = opt.ransac;
    p.seed = opt.seed;
    mssl::RansacTrace trace;
    const mssl::LocalizationResult res = mssl::localize_ransac(itd, p, &trace);
    print_rows(*os, "ransac", res);
    std::cerr << "ransac: " << res.source_count << " source(s)\n";
    if (!opt.trace_csv.empty()) mssl::write_trace_csv(opt.trace_csv, trace);
  }
  return 0;
}

int run_eval_cmd(const EvalOpts& opt) {
  mssl::EvalConfig config = mssl::load_eval_config_json(opt.config_path);
  if (opt.seed_given) config.seed = opt.seed;

  std::filesystem::create_directories(opt.out_dir);
  const std::vector<mssl::EvalOutput> outputs = mssl::run_eval(config);
  for (const auto& out : outputs) {
    const std::string name = mssl::estimator_name(out.kind);
    mssl::write_confusion_csv(opt.out_dir + "/confusion_" + name + ".csv", out.confusion);
    mssl::write_mae_csv(opt.out_dir + "/mae_" + name + ".csv", out.mae, out.confusion);
    mssl::write_runlog_csv(opt.out_dir + "/runlog_" + name + ".csv", out.kind, out.runs);
  }
  const std::string summary = mssl::summarize(outputs);
  std::ofstream sf(opt.out_dir + "/summary.txt");
  if (!sf) throw mssl::IoError("cannot write summary to " + opt.out_dir);
  sf << summary;
  std::cout << summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating bi-microphone sound source localization toolkit"};
  app.require_subcommand(1);

  SimulateOpts sim_opt;
  CLI::App* sim = app.add_subcommand("simulate", "Generate an ITD signal from a scene file");
  sim->add_option("--scene", sim_opt.scene_path, "Scene JSON file")->required();
  sim->add_option("--out", sim_opt.out_path, "Output ITD CSV path")->required();
  add_array_flags(sim, sim_opt.array);
  sim->add_option("--rotations", sim_opt.sim.rotations, "Full rotations to simulate")
      ->capture_default_str();
  sim->add_option("--noise-sigma", sim_opt.sim.noise_sigma_m, "ITD noise std dev [m]")
      ->capture_default_str();
  sim->add_option("--seed", sim_opt.sim.seed, "RNG seed")->capture_default_str();
  sim->add_option("--assignment", sim_opt.assignment, "Sample assignment: uniform|power")
      ->check(CLI::IsMember({"uniform", "power"}))
      ->capture_default_str();
  sim->add_option("--pathway", sim_opt.pathway,
                  "geometric: ITD model directly; waveform: mic signals + cross-correlation")
      ->check(CLI::IsMember({"geometric", "waveform"}))
      ->capture_default_str();
  sim->add_option("--source-signal", sim_opt.source_signal,
                  "Generated source material for the waveform pathway: white|tones")
      ->check(CLI::IsMember({"white", "tones"}))
      ->capture_default_str();
  sim->add_option("--wav", sim_opt.wav_paths,
                  "WAV file per source (waveform pathway, overrides --source-signal)");
  sim->add_option("--fs", sim_opt.fs_hz, "Sample rate for generated sources [Hz]")
      ->capture_default_str();
  sim->add_option("--frame-len", sim_opt.frame_len, "Correlation frame length [samples]")
      ->capture_default_str();
  sim->add_option("--mic-noise-sigma", sim_opt.mic_noise_sigma,
                  "Per-mic additive noise std dev (waveform pathway)")
      ->capture_default_str();

  LocalizeOpts loc_opt;
  CLI::App* loc = app.add_subcommand("localize", "Estimate sources from an ITD CSV");
  loc->add_option("--itd", loc_opt.itd_path, "Input ITD CSV")->required();
  loc->add_option("--out", loc_opt.out_path, "Write the result table here instead of stdout");
  loc->add_option("--estimator", loc_opt.estimator, "dbscan|ransac|both")
      ->check(CLI::IsMember({"dbscan", "ransac", "both"}))
      ->capture_default_str();
  add_array_flags(loc, loc_opt.array);
  loc->add_option("--epsilon", loc_opt.dbscan.epsilon_deg, "DBSCAN neighborhood radius [deg]")
      ->capture_default_str();
  loc->add_option("--min-points", loc_opt.dbscan.min_points, "DBSCAN density threshold")
      ->capture_default_str();
  loc->add_option("--n-map", loc_opt.dbscan.n_map, "Orientation mapping iterations")
      ->capture_default_str();
  loc->add_option("--n-iter", loc_opt.ransac.n_iter, "Consensus draws per fitted source")
      ->capture_default_str();
  loc->add_option("--sigma-conf", loc_opt.ransac.sigma_conf_m, "Inlier band [m]")
      ->capture_default_str();
  loc->add_option("--confidence-threshold", loc_opt.ransac.confidence_threshold_pct,
                  "Qualifying confidence cutoff [%]")
      ->capture_default_str();
  loc->add_option("--max-sources", loc_opt.ransac.max_sources, "Cap on fitted sinusoids")
      ->capture_default_str();
  loc->add_option("--min-inliers", loc_opt.ransac.min_inliers_abs,
                  "Stop when the best fit drops below this count")
      ->capture_default_str();
  loc->add_option("--seed", loc_opt.seed, "RNG seed")->capture_default_str();
  loc->add_option("--points-csv", loc_opt.points_csv,
                  "Write mapped orientation points with cluster labels here");
  loc->add_option("--trace-csv", loc_opt.trace_csv, "Write the fit trace here");

  EvalOpts eval_opt;
  CLI::App* ev = app.add_subcommand("eval", "Monte Carlo evaluation sweep");
  ev->add_option("--config", eval_opt.config_path, "Eval config JSON")->required();
  ev->add_option("--out-dir", eval_opt.out_dir, "Output directory for CSV tables")->required();
  CLI::Option* seed_opt = ev->add_option("--seed", eval_opt.seed, "Override the config seed");

  CLI11_PARSE(app, argc, argv);
  eval_opt.seed_given = seed_opt->count() > 0;

  try {
    if (sim->parsed()) return run_simulate(sim_opt);
    if (loc->parsed()) return run_localize(loc_opt);
    if (ev->parsed()) return run_eval_cmd(eval_opt);
  } catch (const mssl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
