#include "doctest.h"

#include "mssl/angles.hpp"
#include "mssl/errors.hpp"
#include "mssl/model.hpp"
#include "mssl/rng.hpp"
#include "mssl/types.hpp"

#include <cmath>

using namespace mssl;

namespace {

ArrayConfig unit_omega_array() {
  ArrayConfig a;
  a.half_baseline_m = 0.09;
  a.omega_rad_s = 1.0;
  return a;
}

} // namespace

TEST_SUITE("model") {

// Reference values below were computed with 50-digit arithmetic and frozen.
TEST_CASE("itd value for a known source and time") {
  SourceSpec src;
  src.azimuth_deg = 50.0;
  src.elevation_deg = 30.0;
  const ArrayConfig arr = unit_omega_array();
  const double d = itd_model(src, arr, 0.5);
  CHECK(d == doctest::Approx(0.056757331125676995).epsilon(1e-14));
}

TEST_CASE("itd is a pure sinusoid in time with the rotation frequency") {
  SourceSpec src;
  src.azimuth_deg = -120.0;
  src.elevation_deg = 55.0;
  ArrayConfig arr; // defaults: omega = 2*pi/60
  const double amp = 2.0 * arr.half_baseline_m * std::cos(deg2rad(src.elevation_deg));
  for (int i = 0; i < 97; ++i) {
    const double t = 0.613 * i;
    const double expect =
        amp * std::sin(deg2rad(src.azimuth_deg) - arr.omega_rad_s * t);
    CHECK(itd_model(src, arr, t) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(std::abs(itd_model(src, arr, t)) <= 2.0 * arr.half_baseline_m + 1e-15);
  }
}

TEST_CASE("amplitude at elevation 30 degrees") {
  SourceSpec src;
  src.azimuth_deg = 50.0;
  src.elevation_deg = 30.0;
  const ArrayConfig arr = unit_omega_array();
  // peak of the sinusoid occurs where the phase argument is 90 degrees
  const double t_peak = deg2rad(50.0 - 90.0) / arr.omega_rad_s;
  CHECK(itd_model(src, arr, t_peak) ==
        doctest::Approx(0.15588457268119895642).epsilon(1e-14));
}

TEST_CASE("theta_from_amplitude inverts the amplitude relation") {
  CHECK(theta_from_amplitude(0.09, 0.09) == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(theta_from_amplitude(0.18, 0.09) == doctest::Approx(0.0));
  CHECK(theta_from_amplitude(0.0, 0.09) == doctest::Approx(90.0));
  // amplitudes slightly above the physical maximum clamp to elevation 0
  CHECK(theta_from_amplitude(0.18 + 1e-12, 0.09) == doctest::Approx(0.0));
  CHECK_THROWS_AS(theta_from_amplitude(-0.01, 0.09), InvalidParam);
  CHECK_THROWS_AS(theta_from_amplitude(0.1, 0.0), InvalidParam);
  CHECK_THROWS_AS(theta_from_amplitude(0.1, -1.0), InvalidParam);
}

TEST_CASE("two-point solve from frozen samples") {
  // samples of 0.18*cos(30 deg)*sin(50 deg - t) at t = 0.3 and t = 1.1,
  // computed independently at high precision
  const double y1 = 0.084469716118625132624;
  const double y2 = -0.035133617363375339418;
  const SineFit fit = solve_two_point(y1, 0.3, y2, 1.1, 1.0);
  CHECK(fit.amplitude_m == doctest::Approx(0.15588457268119895642).epsilon(1e-12));
  CHECK(fit.phase_deg == doctest::Approx(50.0).epsilon(1e-10));
}

TEST_CASE("two-point solve at peak and zero crossing") {
  // y(t) = A*sin(phi - omega*t), sampled where the argument is 90 and 0 degrees
  const double A = 0.12, phi = 40.0, omega = 2.0;
  const double t1 = deg2rad(phi - 90.0) / omega;
  const double t2 = deg2rad(phi) / omega;
  const SineFit fit = solve_two_point(A, t1, 0.0, t2, omega);
  CHECK(fit.amplitude_m == doctest::Approx(A).epsilon(1e-12));
  CHECK(fit.phase_deg == doctest::Approx(phi).epsilon(1e-10));
}

TEST_CASE("two-point solve is symmetric in sample order") {
  Rng rng(314);
  for (int k = 0; k < 500; ++k) {
    const double A = 0.001 + 0.179 * rng.next_double();
    const double phi = 180.0 - 360.0 * rng.next_double();
    const double omega = 0.5 + rng.next_double();
    const double t1 = 10.0 * rng.next_double();
    double t2 = 10.0 * rng.next_double();
    if (std::abs(std::sin(omega * (t2 - t1))) < 1e-3) continue;
    const double y1 = A * std::sin(deg2rad(phi) - omega * t1);
    const double y2 = A * std::sin(deg2rad(phi) - omega * t2);
    const SineFit f12 = solve_two_point(y1, t1, y2, t2, omega);
    const SineFit f21 = solve_two_point(y2, t2, y1, t1, omega);
    CHECK(f12.amplitude_m == f21.amplitude_m);
    CHECK(f12.phase_deg == f21.phase_deg);
  }
}

TEST_CASE("phase recovery is equivariant under azimuth shifts") {
  const double A = 0.08, omega = 2.0 * kPi / 60.0;
  const double t1 = 3.0, t2 = 17.0;
  const double phi1 = 25.0;
  const SineFit base = solve_two_point(A * std::sin(deg2rad(phi1) - omega * t1), t1,
                                       A * std::sin(deg2rad(phi1) - omega * t2), t2,
                                       omega);
  for (double shift = -300.0; shift <= 300.0; shift += 37.0) {
    const double phi = phi1 + shift;
    const SineFit f = solve_two_point(A * std::sin(deg2rad(phi) - omega * t1), t1,
                                      A * std::sin(deg2rad(phi) - omega * t2), t2,
                                      omega);
    CHECK(angular_distance(f.phase_deg, base.phase_deg + shift) < 1e-9);
    CHECK(f.phase_deg > -180.0);
    CHECK(f.phase_deg <= 180.0);
  }
}

TEST_CASE("two-point solve round trip over random draws") {
  Rng rng(2718);
  const double omega = 2.0 * kPi / 60.0;
  double worst_amp = 0.0, worst_phi = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double A = 1e-3 + (0.18 - 1e-3) * rng.next_double();
    const double phi = 180.0 - 360.0 * rng.next_double();
    const double t1 = 60.0 * rng.next_double();
    double t2 = 60.0 * rng.next_double();
    while (std::abs(std::sin(omega * (t2 - t1))) < 1e-4)
      t2 = 60.0 * rng.next_double();
    const double y1 = A * std::sin(deg2rad(phi) - omega * t1);
    const double y2 = A * std::sin(deg2rad(phi) - omega * t2);
    const SineFit fit = solve_two_point(y1, t1, y2, t2, omega);
    worst_amp = std::max(worst_amp, std::abs(fit.amplitude_m - A));
    worst_phi = std::max(worst_phi, angular_distance(fit.phase_deg, phi));
  }
  CHECK(worst_amp < 1e-9);
  CHECK(worst_phi < 1e-7);
}

TEST_CASE("degenerate sample spacing is rejected") {
  const double omega = 1.0;
  // half a rotation apart: sin(omega*(t2-t1)) vanishes
  CHECK_THROWS_AS(solve_two_point(0.1, 0.0, -0.1, kPi, omega), DegeneratePair);
  CHECK_THROWS_AS(solve_two_point(0.1, 2.0, 0.1, 2.0, omega), DegeneratePair);
  CHECK_THROWS_AS(solve_two_point(0.1, 0.0, -0.1, 2.0 * kPi + 1e-9, omega),
                  DegeneratePair);
}

TEST_CASE("all-zero samples are reported as silence") {
  CHECK_THROWS_AS(solve_two_point(0.0, 0.0, 0.0, 1.0, 1.0), ZeroSignal);
}

TEST_CASE("solve_pair_coeffs reports status instead of throwing") {
  const double s1 = std::sin(0.3), c1 = std::cos(0.3);
  const double s2 = std::sin(1.1), c2 = std::cos(1.1);
  SinusoidCoeffs out;
  CHECK(solve_pair_coeffs(0.05, s1, c1, 0.02, s2, c2, out) == PairSolveStatus::kOk);
  CHECK(solve_pair_coeffs(0.0, s1, c1, 0.0, s2, c2, out) ==
        PairSolveStatus::kZeroSignal);
  CHECK(solve_pair_coeffs(0.05, s1, c1, 0.02, s1, c1, out) ==
        PairSolveStatus::kDegenerate);
}

} // TEST_SUITE
