#pragma once
// JSON loaders for scene descriptions and evaluation configs. Unknown keys
// are rejected so config typos fail loudly.

#include <string>

#include "mssl/eval.hpp"
#include "mssl/scene.hpp"

namespace mssl {

/// Scene file:
/// {
///   "sources": [{"azimuth_deg": ..., "elevation_deg": ...,
///                "distance_m": 5.0, "duty": 1.0}, ...],
///   "min_azimuth_sep_deg": 20.0,   // optional
///   "min_elevation_sep_deg": 10.0  // optional
/// }
Scene load_scene_json(const std::string& path);

/// Eval config file; every key optional, defaults as in EvalConfig:
/// {
///   "k_values": [1,2,3,4,5], "runs_per_k": 200, "estimator": "both",
///   "seed": 0,
///   "array": {"half_baseline_m": ..., "omega_rad_s": ...,
///             "samples_per_rotation": ..., "sound_speed_m_s": ...},
///   "sim": {"rotations": 1, "noise_sigma_m": 0.001, "assignment": "uniform"},
///   "scene": {"min_azimuth_sep_deg": 20, "min_elevation_sep_deg": 10,
///             "distance_m": 5, "duty": 1, "max_attempts": 20000},
///   "dbscan": {"epsilon_deg": 3, "min_points": 40, "n_map": 10000},
///   "ransac": {"n_iter": 5000, "sigma_conf_m": 0.015688,
///              "confidence_threshold_pct": 10, "max_sources": 12,
///              "min_inliers_abs": 5}
/// }
EvalConfig load_eval_config_json(const std::string& path);

}  // namespace mssl
