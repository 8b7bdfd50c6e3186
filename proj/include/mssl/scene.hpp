#pragma once
// ITD-domain scene synthesis: one ITD sample per rotation step, each drawn
// from one active source plus additive Gaussian noise.

#include <cstdint>
#include <vector>

#include "mssl/types.hpp"

namespace mssl {

struct Scene {
  std::vector<SourceSpec> sources;
  // Generation-time separation constraints, carried along as metadata.
  double min_azimuth_sep_deg = 20.0;
  double min_elevation_sep_deg = 10.0;
};

/// How the generating source is picked when several are active at a sample.
enum class AssignmentPolicy {
  kUniform,        // every active source equally likely
  kPowerWeighted,  // probability proportional to received power, 1 / distance^2
};

struct SimParams {
  int rotations = 1;
  double noise_sigma_m = 0.001;  // std dev of the additive ITD noise
  std::uint64_t seed = 0;
  AssignmentPolicy assignment = AssignmentPolicy::kUniform;
};
void validate(const SimParams& params);

/// Which source generated each sample; -1 where none was active and the
/// sample is pure noise.
struct SynthDetail {
  std::vector<int> source_index;
};

/// rotations * samples_per_rotation samples at uniform time steps. Each
/// sample: gate sources by duty, pick one active source per the assignment
/// policy, evaluate the ITD model, add noise. Throws EmptyScene when the
/// scene has no sources.
ItdSignal synthesize_itd(const Scene& scene, const ArrayConfig& array,
                         const SimParams& params, SynthDetail* detail = nullptr);

struct SceneConstraints {
  double min_azimuth_sep_deg = 20.0;
  double min_elevation_sep_deg = 10.0;
  double distance_m = 5.0;
  double duty = 1.0;
  int max_attempts = 20000;  // rejection-sampling budget for the whole call
};

/// k random sources: azimuth uniform in (-180, 180], elevation uniform in
/// [0, 90), every pair separated by at least the configured azimuth AND
/// elevation gaps. Throws ConstraintUnsatisfiable when the attempt budget
/// runs out (e.g. k = 19 cannot satisfy 20 degree azimuth gaps).
Scene random_scene(int k, std::uint64_t seed, const SceneConstraints& constraints = {});

}  // namespace mssl
