#pragma once
#include <cmath>
#include <vector>

#include "mssl/angles.hpp"
#include "mssl/errors.hpp"

namespace mssl {

/// Ground-truth sound source. Azimuth phi is measured from the array's
/// reference heading, in (-180, 180]; elevation theta rises from the rotation
/// plane, in [0, 90]. Far-field: only the direction matters for the ITD,
/// distance_m is carried for weighting policies.
struct SourceSpec {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double distance_m = 5.0;
  double duty = 1.0;  // fraction of samples this source is active, (0, 1]
};
void validate(const SourceSpec& source);

/// Rotating bi-microphone array. The microphones sit 2*half_baseline_m apart
/// and spin at omega_rad_s about the vertical axis, producing
/// samples_per_rotation ITD samples per revolution.
struct ArrayConfig {
  double half_baseline_m = 0.09;
  double omega_rad_s = 2.0 * kPi / 60.0;
  int samples_per_rotation = 360;
  double sound_speed_m_s = 345.0;

  double rotation_period_s() const { return 2.0 * kPi / std::fabs(omega_rad_s); }
  double sample_step_s() const { return rotation_period_s() / samples_per_rotation; }
  /// Largest representable path-length difference, 2b.
  double max_itd_m() const { return 2.0 * half_baseline_m; }
};
void validate(const ArrayConfig& array);

struct ItdSample {
  double t_s = 0.0;
  double d_m = 0.0;  // path-length difference in meters
};

/// Time-stamped ITD track plus the array that produced it.
struct ItdSignal {
  std::vector<ItdSample> samples;
  ArrayConfig array;

  /// True when the time span covers at least one full rotation (within one
  /// sample step).
  bool covers_full_rotation() const;
};
void validate(const ItdSignal& itd);

/// Amplitude/phase of the model d(t) = amplitude_m * sin(phase_deg - omega t).
/// For a single source the phase equals the azimuth and the amplitude encodes
/// elevation through A = 2b cos(theta).
struct SineFit {
  double amplitude_m = 0.0;
  double phase_deg = 0.0;  // (-180, 180]
};

/// Point in the orientation domain: elevation theta in [0, 90], azimuth phi
/// in (-180, 180].
struct OrientationPoint {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
};

struct OrientationEstimate {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  int support = 0;              // inlier count / cluster size
  double confidence_pct = 0.0;  // relative to the strongest estimate, 100 = strongest
};

struct LocalizationResult {
  int source_count = 0;  // K-hat
  std::vector<OrientationEstimate> estimates;
};

}  // namespace mssl
