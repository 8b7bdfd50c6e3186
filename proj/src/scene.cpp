#include "mssl/scene.hpp"

#include <string>

#include "mssl/model.hpp"
#include "mssl/rng.hpp"

namespace mssl {

void validate(const SimParams& params) {
  if (params.rotations < 1) throw InvalidParam("rotations must be at least 1");
  if (!(params.noise_sigma_m >= 0.0)) throw InvalidParam("noise_sigma_m must be non-negative");
}

ItdSignal synthesize_itd(const Scene& scene, const ArrayConfig& array,
                         const SimParams& params, SynthDetail* detail) {
  if (scene.sources.empty()) throw EmptyScene("scene has no sources");
  validate(array);
  validate(params);
  for (const auto& s : scene.sources) validate(s);

  const int n_src = static_cast<int>(scene.sources.size());
  const int n = params.rotations * array.samples_per_rotation;
  const double dt = array.sample_step_s();

  std::vector<double> weight(n_src, 1.0);
  if (params.assignment == AssignmentPolicy::kPowerWeighted) {
    for (int k = 0; k < n_src; ++k) {
      const double d = scene.sources[k].distance_m;
      weight[k] = 1.0 / (d * d);
    }
  }

  ItdSignal out;
  out.array = array;
  out.samples.resize(n);
  if (detail) detail->source_index.assign(n, -1);

  std::vector<int> active;
  active.reserve(n_src);
  for (int i = 0; i < n; ++i) {
    const double t = i * dt;
    Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(i));

    active.clear();
    for (int k = 0; k < n_src; ++k) {
      if (rng.next_double() < scene.sources[k].duty) active.push_back(k);
    }

    double d = 0.0;
    int chosen = -1;
    if (!active.empty()) {
      if (params.assignment == AssignmentPolicy::kUniform) {
        chosen = active[rng.below(active.size())];
      } else {
        double total = 0.0;
        for (int k : active) total += weight[k];
        const double r = rng.next_double() * total;
        double acc = 0.0;
        chosen = active.back();
        for (int k : active) {
          acc += weight[k];
          if (r < acc) {
            chosen = k;
            break;
          }
        }
      }
      d = itd_model(scene.sources[chosen], array, t);
    }
    d += params.noise_sigma_m * rng.next_gaussian();

    out.samples[i] = {t, d};
    if (detail) detail->source_index[i] = chosen;
  }
  return out;
}

Scene random_scene(int k, std::uint64_t seed, const SceneConstraints& constraints) {
  if (k < 1) throw InvalidParam("source count must be at least 1");
  if (!(constraints.min_azimuth_sep_deg >= 0.0) || !(constraints.min_elevation_sep_deg >= 0.0))
    throw InvalidParam("separation constraints must be non-negative");
  if (!(constraints.distance_m > 0.0)) throw InvalidParam("distance_m must be positive");
  if (!(constraints.duty > 0.0 && constraints.duty <= 1.0))
    throw InvalidParam("duty must be in (0, 1]");
  if (constraints.max_attempts < 1) throw InvalidParam("max_attempts must be at least 1");

  Rng rng(seed);
  Scene scene;
  scene.min_azimuth_sep_deg = constraints.min_azimuth_sep_deg;
  scene.min_elevation_sep_deg = constraints.min_elevation_sep_deg;

  // Sequential placement with rejection; a wedged partial scene (early picks
  // leaving no room) is discarded and rebuilt.
  const int wedge_limit = std::max(200, constraints.max_attempts / 50);
  int attempts = 0;
  int since_last_accept = 0;
  while (static_cast<int>(scene.sources.size()) < k) {
    if (++attempts > constraints.max_attempts)
      throw ConstraintUnsatisfiable("could not place " + std::to_string(k) +
                                    " sources within the separation constraints");
    if (since_last_accept > wedge_limit) {
      scene.sources.clear();
      since_last_accept = 0;
    }

    SourceSpec s;
    s.azimuth_deg = 180.0 - rng.next_double() * 360.0;
    s.elevation_deg = rng.next_double() * 90.0;
    s.distance_m = constraints.distance_m;
    s.duty = constraints.duty;

    bool ok = true;
    for (const auto& e : scene.sources) {
      if (angular_distance(s.azimuth_deg, e.azimuth_deg) < constraints.min_azimuth_sep_deg ||
          std::fabs(s.elevation_deg - e.elevation_deg) < constraints.min_elevation_sep_deg) {
        ok = false;
        break;
      }
    }
    if (ok) {
      scene.sources.push_back(s);
      since_last_accept = 0;
    } else {
      ++since_last_accept;
    }
  }
  return scene;
}

}  // namespace mssl
