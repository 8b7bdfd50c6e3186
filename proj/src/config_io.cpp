#include "mssl/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "json.hpp"

namespace mssl {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ParseError(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": bad value for '" + std::string(key) + "'");
  }
}

AssignmentPolicy parse_assignment(const std::string& name, const std::string& where) {
  if (name == "uniform") return AssignmentPolicy::kUniform;
  if (name == "power") return AssignmentPolicy::kPowerWeighted;
  throw ParseError(where + ": assignment must be 'uniform' or 'power'");
}

}  // namespace

Scene load_scene_json(const std::string& path) {
  const json root = parse_file(path);
  check_keys(root, path, {"sources", "min_azimuth_sep_deg", "min_elevation_sep_deg"});
  if (!root.contains("sources") || !root.at("sources").is_array())
    throw ParseError(path + ": 'sources' array is required");

  Scene scene;
  scene.min_azimuth_sep_deg = get_or(root, "min_azimuth_sep_deg", 20.0, path);
  scene.min_elevation_sep_deg = get_or(root, "min_elevation_sep_deg", 10.0, path);
  for (const auto& s : root.at("sources")) {
    const std::string where = path + ": sources[]";
    check_keys(s, where, {"azimuth_deg", "elevation_deg", "distance_m", "duty"});
    if (!s.contains("azimuth_deg") || !s.contains("elevation_deg"))
      throw ParseError(where + ": azimuth_deg and elevation_deg are required");
    SourceSpec spec;
    spec.azimuth_deg = get_or(s, "azimuth_deg", 0.0, where);
    spec.elevation_deg = get_or(s, "elevation_deg", 0.0, where);
    spec.distance_m = get_or(s, "distance_m", 5.0, where);
    spec.duty = get_or(s, "duty", 1.0, where);
    validate(spec);
    scene.sources.push_back(spec);
  }
  return scene;
}

EvalConfig load_eval_config_json(const std::string& path) {
  const json root = parse_file(path);
  check_keys(root, path,
             {"k_values", "runs_per_k", "estimator", "seed", "array", "sim", "scene",
              "dbscan", "ransac"});

  EvalConfig config;
  config.k_values = get_or(root, "k_values", config.k_values, path);
  config.runs_per_k = get_or(root, "runs_per_k", config.runs_per_k, path);
  config.seed = get_or(root, "seed", config.seed, path);

  const std::string estimator = get_or<std::string>(root, "estimator", "both", path);
  if (estimator == "both") {
    config.run_dbscan = config.run_ransac = true;
  } else if (estimator == "dbscan") {
    config.run_dbscan = true;
    config.run_ransac = false;
  } else if (estimator == "ransac") {
    config.run_dbscan = false;
    config.run_ransac = true;
  } else {
    throw ParseError(path + ": estimator must be 'dbscan', 'ransac', or 'both'");
  }

  if (root.contains("array")) {
    const json& a = root.at("array");
    const std::string where = path + ": array";
    check_keys(a, where,
               {"half_baseline_m", "omega_rad_s", "samples_per_rotation", "sound_speed_m_s"});
    config.array.half_baseline_m = get_or(a, "half_baseline_m", config.array.half_baseline_m, where);
    config.array.omega_rad_s = get_or(a, "omega_rad_s", config.array.omega_rad_s, where);
    config.array.samples_per_rotation =
        get_or(a, "samples_per_rotation", config.array.samples_per_rotation, where);
    config.array.sound_speed_m_s =
        get_or(a, "sound_speed_m_s", config.array.sound_speed_m_s, where);
  }
  if (root.contains("sim")) {
    const json& s = root.at("sim");
    const std::string where = path + ": sim";
    check_keys(s, where, {"rotations", "noise_sigma_m", "assignment"});
    config.sim.rotations = get_or(s, "rotations", config.sim.rotations, where);
    config.sim.noise_sigma_m = get_or(s, "noise_sigma_m", config.sim.noise_sigma_m, where);
    config.sim.assignment =
        parse_assignment(get_or<std::string>(s, "assignment", "uniform", where), where);
  }
  if (root.contains("scene")) {
    const json& s = root.at("scene");
    const std::string where = path + ": scene";
    check_keys(s, where,
               {"min_azimuth_sep_deg", "min_elevation_sep_deg", "distance_m", "duty",
                "max_attempts"});
    config.scene.min_azimuth_sep_deg =
        get_or(s, "min_azimuth_sep_deg", config.scene.min_azimuth_sep_deg, where);
    config.scene.min_elevation_sep_deg =
        get_or(s, "min_elevation_sep_deg", config.scene.min_elevation_sep_deg, where);
    config.scene.distance_m = get_or(s, "distance_m", config.scene.distance_m, where);
    config.scene.duty = get_or(s, "duty", config.scene.duty, where);
    config.scene.max_attempts = get_or(s, "max_attempts", config.scene.max_attempts, where);
  }
  if (root.contains("dbscan")) {
    const json& d = root.at("dbscan");
    const std::string where = path + ": dbscan";
    check_keys(d, where, {"epsilon_deg", "min_points", "n_map"});
    config.dbscan.epsilon_deg = get_or(d, "epsilon_deg", config.dbscan.epsilon_deg, where);
    config.dbscan.min_points = get_or(d, "min_points", config.dbscan.min_points, where);
    config.dbscan.n_map = get_or(d, "n_map", config.dbscan.n_map, where);
  }
  if (root.contains("ransac")) {
    const json& r = root.at("ransac");
    const std::string where = path + ": ransac";
    check_keys(r, where,
               {"n_iter", "sigma_conf_m", "confidence_threshold_pct", "max_sources",
                "min_inliers_abs"});
    config.ransac.n_iter = get_or(r, "n_iter", config.ransac.n_iter, where);
    config.ransac.sigma_conf_m = get_or(r, "sigma_conf_m", config.ransac.sigma_conf_m, where);
    config.ransac.confidence_threshold_pct =
        get_or(r, "confidence_threshold_pct", config.ransac.confidence_threshold_pct, where);
    config.ransac.max_sources = get_or(r, "max_sources", config.ransac.max_sources, where);
    config.ransac.min_inliers_abs =
        get_or(r, "min_inliers_abs", config.ransac.min_inliers_abs, where);
  }

  validate(config);
  return config;
}

}  // namespace mssl
