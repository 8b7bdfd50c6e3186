#pragma once
// Angle helpers shared across the library. Public interfaces speak degrees;
// bodies convert to radians where the math needs them.

#include <algorithm>
#include <cmath>
#include <span>

namespace mssl {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle to (-180, 180].
inline double wrap_degrees_signed(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w <= 0.0) w += 360.0;
  return w - 180.0;
}

/// Circular distance between two azimuths, in [0, 180].
inline double angular_distance(double a_deg, double b_deg) {
  double d = std::fabs(std::fmod(a_deg - b_deg, 360.0));
  return std::min(d, 360.0 - d);
}

/// Distance in the (theta, phi) orientation plane: Euclidean in degrees with
/// circular wrap on phi. Both phi arguments must already be in (-180, 180].
inline double orientation_distance(double theta_a_deg, double phi_a_deg,
                                   double theta_b_deg, double phi_b_deg) {
  const double dt = theta_a_deg - theta_b_deg;
  double dp = std::fabs(phi_a_deg - phi_b_deg);
  dp = std::min(dp, 360.0 - dp);
  return std::sqrt(dt * dt + dp * dp);
}

/// Circular mean of azimuths, result in (-180, 180]. A cluster hugging the
/// +/-180 seam averages to ~180, never to 0.
inline double circular_mean_deg(std::span<const double> degs) {
  double s = 0.0;
  double c = 0.0;
  for (double d : degs) {
    s += std::sin(deg2rad(d));
    c += std::cos(deg2rad(d));
  }
  return wrap_degrees_signed(rad2deg(std::atan2(s, c)));
}

}  // namespace mssl
