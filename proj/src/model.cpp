#include "mssl/model.hpp"

namespace mssl {

double itd_model(const SourceSpec& source, const ArrayConfig& array, double t_s) {
  const double theta = deg2rad(source.elevation_deg);
  const double phi = deg2rad(source.azimuth_deg);
  return 2.0 * array.half_baseline_m * std::cos(theta) *
         std::sin(phi - array.omega_rad_s * t_s);
}

double theta_from_amplitude(double amplitude_m, double half_baseline_m) {
  if (!(half_baseline_m > 0.0)) throw InvalidParam("half_baseline_m must be positive");
  if (amplitude_m < 0.0) throw InvalidParam("amplitude_m must be non-negative");
  return theta_from_amplitude_unchecked(amplitude_m, half_baseline_m);
}

SineFit to_sine_fit(const SinusoidCoeffs& coeffs) {
  SineFit fit;
  fit.amplitude_m = std::hypot(coeffs.a_sin, coeffs.a_cos);
  fit.phase_deg = wrap_degrees_signed(rad2deg(std::atan2(coeffs.a_cos, -coeffs.a_sin)));
  return fit;
}

SineFit solve_two_point(double y1_m, double t1_s, double y2_m, double t2_s,
                        double omega_rad_s) {
  SinusoidCoeffs coeffs;
  const PairSolveStatus status =
      solve_pair_coeffs(y1_m, std::sin(omega_rad_s * t1_s), std::cos(omega_rad_s * t1_s),
                        y2_m, std::sin(omega_rad_s * t2_s), std::cos(omega_rad_s * t2_s),
                        coeffs);
  if (status == PairSolveStatus::kDegenerate)
    throw DegeneratePair("sample times differ by ~multiple of half a rotation");
  if (status == PairSolveStatus::kZeroSignal)
    throw ZeroSignal("both samples are zero, phase undefined");
  return to_sine_fit(coeffs);
}

}  // namespace mssl
