#pragma once
// Geometric ITD model of the rotating bi-microphone array and the closed-form
// two-point recovery of sinusoid amplitude and phase.
//
// Convention used throughout: d(t) = A sin(phi - omega t) with A = 2b cos(theta).
// The phase equals the source azimuth; the amplitude encodes elevation through
// theta = acos(A / 2b).

#include "mssl/types.hpp"

namespace mssl {

/// Pairs with |sin(omega (t2 - t1))| below this are rejected as degenerate;
/// the two-point solve divides by that quantity.
inline constexpr double kPairDegeneracyTol = 1e-6;

/// Path-length ITD of `source` seen by `array` at time t.
double itd_model(const SourceSpec& source, const ArrayConfig& array, double t_s);

/// Elevation in degrees from a sinusoid amplitude. Amplitudes above the
/// physical bound 2b (noisy fits) clamp to theta = 0. Throws InvalidParam on
/// negative amplitude or non-positive baseline.
double theta_from_amplitude(double amplitude_m, double half_baseline_m);

/// Same, minus argument checks; for hot loops that have already validated.
inline double theta_from_amplitude_unchecked(double amplitude_m, double half_baseline_m) {
  const double ratio = std::min(amplitude_m / (2.0 * half_baseline_m), 1.0);
  return rad2deg(std::acos(ratio));
}

/// d(t) written as a_sin sin(wt) + a_cos cos(wt); the two-point solve is
/// linear in this basis. Relative to SineFit: a_cos = A sin(phi),
/// a_sin = -A cos(phi).
struct SinusoidCoeffs {
  double a_sin = 0.0;
  double a_cos = 0.0;
};

enum class PairSolveStatus { kOk, kDegenerate, kZeroSignal };

/// Two-point solve with precomputed s_i = sin(omega t_i), c_i = cos(omega t_i).
/// The determinant s2*c1 - c2*s1 equals sin(omega (t2 - t1)).
inline PairSolveStatus solve_pair_coeffs(double y1, double s1, double c1,
                                         double y2, double s2, double c2,
                                         SinusoidCoeffs& out) noexcept {
  const double det = s2 * c1 - c2 * s1;
  if (std::fabs(det) < kPairDegeneracyTol) return PairSolveStatus::kDegenerate;
  const double a_cos = (y1 * s2 - y2 * s1) / det;
  const double a_sin = (y2 * c1 - y1 * c2) / det;
  if (a_sin == 0.0 && a_cos == 0.0) return PairSolveStatus::kZeroSignal;
  out.a_sin = a_sin;
  out.a_cos = a_cos;
  return PairSolveStatus::kOk;
}

/// Amplitude/phase form of the linear coefficients; phase lands in (-180, 180].
SineFit to_sine_fit(const SinusoidCoeffs& coeffs);

/// The unique (A >= 0, phi) with A sin(phi - omega t_i) = y_i for i = 1, 2.
/// Throws DegeneratePair when |sin(omega (t2 - t1))| < kPairDegeneracyTol and
/// ZeroSignal when both samples vanish.
SineFit solve_two_point(double y1_m, double t1_s, double y2_m, double t2_s,
                        double omega_rad_s);

}  // namespace mssl
