#include "doctest.h"

#include "mssl/angles.hpp"
#include "mssl/dbscan.hpp"
#include "mssl/errors.hpp"
#include "mssl/rng.hpp"
#include "mssl/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

using namespace mssl;

namespace {

ItdSignal noise_only_signal(double sigma, std::uint64_t seed) {
  ItdSignal sig;
  Rng rng(seed);
  const double dt = sig.array.sample_step_s();
  for (int i = 0; i < 360; ++i)
    sig.samples.push_back({i * dt, sigma * rng.next_gaussian()});
  return sig;
}

std::vector<OrientationPoint> blob(double theta, double phi, int n, double spread,
                                   std::uint64_t seed) {
  std::vector<OrientationPoint> pts;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    pts.push_back({theta + spread * (2.0 * rng.next_double() - 1.0),
                   wrap_degrees_signed(phi + spread * (2.0 * rng.next_double() - 1.0))});
  }
  return pts;
}

std::vector<int> sorted_cluster_sizes(const DbscanResult& res) {
  std::vector<int> sizes;
  for (const auto& c : res.clusters) sizes.push_back(static_cast<int>(c.members.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

} // namespace

TEST_SUITE("dbscan") {

TEST_CASE("noiseless single source maps every pair onto the true orientation") {
  Scene scene;
  scene.sources.push_back({120.0, 40.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  sim.noise_sigma_m = 0.0;
  const ItdSignal sig = synthesize_itd(scene, arr, sim);
  DbscanParams params;
  params.seed = 4;
  const auto pts = map_to_orientation(sig, params);
  REQUIRE(pts.size() == 10000);
  for (const auto& p : pts) {
    CHECK(std::abs(p.theta_deg - 40.0) < 1e-7);
    CHECK(angular_distance(p.phi_deg, 120.0) < 1e-7);
  }
}

TEST_CASE("noiseless two-source mapping concentrates near the true orientations") {
  Scene scene;
  scene.sources.push_back({-60.0, 30.0, 5.0, 1.0});
  scene.sources.push_back({100.0, 60.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  sim.noise_sigma_m = 0.0;
  sim.seed = 6;
  const ItdSignal sig = synthesize_itd(scene, arr, sim);
  DbscanParams params;
  params.seed = 7;
  const auto pts = map_to_orientation(sig, params);
  int near = 0;
  for (const auto& p : pts) {
    const double d0 = orientation_distance(p.theta_deg, p.phi_deg, 30.0, -60.0);
    const double d1 = orientation_distance(p.theta_deg, p.phi_deg, 60.0, 100.0);
    near += (std::min(d0, d1) < 1.0) ? 1 : 0;
  }
  CHECK(near >= 4500);
}

TEST_CASE("mapping is unbiased under noise") {
  Scene scene;
  scene.sources.push_back({70.0, 25.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  DbscanParams params;
  params.n_map = 2000;
  double sum_theta = 0.0;
  std::vector<double> phis;
  long total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    sim.seed = seed;
    params.seed = seed + 1000;
    const ItdSignal sig = synthesize_itd(scene, arr, sim);
    for (const auto& p : map_to_orientation(sig, params)) {
      sum_theta += p.theta_deg;
      phis.push_back(p.phi_deg);
      ++total;
    }
  }
  CHECK(std::abs(sum_theta / static_cast<double>(total) - 25.0) < 0.5);
  CHECK(angular_distance(circular_mean_deg(phis), 70.0) < 0.5);
}

TEST_CASE("mapping is deterministic and sized by n_map") {
  Scene scene;
  scene.sources.push_back({0.0, 10.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  const ItdSignal sig = synthesize_itd(scene, arr, sim);
  DbscanParams params;
  params.n_map = 500;
  params.seed = 12;
  const auto a = map_to_orientation(sig, params);
  const auto b = map_to_orientation(sig, params);
  REQUIRE(a.size() == 500);
  REQUIRE(b.size() == 500);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta_deg == b[i].theta_deg);
    CHECK(a[i].phi_deg == b[i].phi_deg);
  }
}

TEST_CASE("mapping rejects unusable signals") {
  DbscanParams params;
  ItdSignal zero;
  const double dt = zero.array.sample_step_s();
  for (int i = 0; i < 360; ++i) zero.samples.push_back({i * dt, 0.0});
  CHECK_THROWS_AS(map_to_orientation(zero, params), InsufficientData);

  ItdSignal tiny;
  tiny.samples.push_back({0.0, 0.01});
  CHECK_THROWS_AS(map_to_orientation(tiny, params), InsufficientData);

  ItdSignal half = noise_only_signal(0.001, 3);
  half.samples.resize(180);  // half a rotation
  CHECK_THROWS_AS(map_to_orientation(half, params), InsufficientData);
}

TEST_CASE("a tight blob forms one cluster with an exact centroid") {
  std::vector<OrientationPoint> pts(100, OrientationPoint{10.0, 20.0});
  DbscanParams params;
  const DbscanResult res = dbscan(pts, params);
  REQUIRE(res.clusters.size() == 1);
  CHECK(res.clusters[0].members.size() == 100);
  CHECK(res.noise.empty());
  CHECK(res.clusters[0].centroid.theta_deg == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(res.clusters[0].centroid.phi_deg == doctest::Approx(20.0).epsilon(1e-9));
  for (int l : res.labels) CHECK(l == 0);
}

TEST_CASE("well-separated blobs form separate clusters") {
  auto pts = blob(10.0, 0.0, 50, 0.5, 1);
  const auto other = blob(40.0, 90.0, 50, 0.5, 2);
  pts.insert(pts.end(), other.begin(), other.end());
  DbscanParams params;
  params.min_points = 30;
  const DbscanResult res = dbscan(pts, params);
  REQUIRE(res.clusters.size() == 2);
  CHECK(res.noise.empty());
  for (const auto& c : res.clusters) {
    CHECK(c.members.size() == 50);
    const bool near_a = orientation_distance(c.centroid.theta_deg, c.centroid.phi_deg,
                                             10.0, 0.0) < 0.3;
    const bool near_b = orientation_distance(c.centroid.theta_deg, c.centroid.phi_deg,
                                             40.0, 90.0) < 0.3;
    CHECK((near_a || near_b));
  }
}

TEST_CASE("clusters straddling the azimuth seam stay whole") {
  const auto pts = blob(20.0, 180.0, 60, 0.5, 9);
  DbscanParams params;
  params.min_points = 30;
  const DbscanResult res = dbscan(pts, params);
  REQUIRE(res.clusters.size() == 1);
  CHECK(res.clusters[0].members.size() == 60);
  CHECK(angular_distance(res.clusters[0].centroid.phi_deg, 180.0) < 0.6);
  CHECK(res.clusters[0].centroid.theta_deg == doctest::Approx(20.0).epsilon(0.05));
}

TEST_CASE("scattered points are all noise") {
  std::vector<OrientationPoint> pts;
  Rng rng(5);
  for (int i = 0; i < 100; ++i)
    pts.push_back({90.0 * rng.next_double(), 180.0 - 360.0 * rng.next_double()});
  DbscanParams params;
  const DbscanResult res = dbscan(pts, params);
  CHECK(res.clusters.empty());
  CHECK(res.noise.size() == 100);
  for (int l : res.labels) CHECK(l == -1);
}

TEST_CASE("labels partition the input") {
  auto pts = blob(15.0, -170.0, 80, 1.0, 3);
  const auto more = blob(70.0, 40.0, 45, 1.0, 4);
  pts.insert(pts.end(), more.begin(), more.end());
  Rng rng(8);
  for (int i = 0; i < 30; ++i)
    pts.push_back({90.0 * rng.next_double(), 180.0 - 360.0 * rng.next_double()});
  DbscanParams params;
  const DbscanResult res = dbscan(pts, params);
  REQUIRE(res.labels.size() == pts.size());
  std::size_t member_total = 0;
  for (const auto& c : res.clusters) member_total += c.members.size();
  CHECK(member_total + res.noise.size() == pts.size());
  std::vector<std::size_t> by_label(res.clusters.size(), 0);
  std::size_t noise_labels = 0;
  for (int l : res.labels) {
    if (l == -1) {
      ++noise_labels;
    } else {
      REQUIRE(l >= 0);
      REQUIRE(static_cast<std::size_t>(l) < res.clusters.size());
      ++by_label[static_cast<std::size_t>(l)];
    }
  }
  CHECK(noise_labels == res.noise.size());
  for (std::size_t c = 0; c < res.clusters.size(); ++c)
    CHECK(by_label[c] == res.clusters[c].members.size());
  for (const auto& c : res.clusters)
    CHECK(c.members.size() >= static_cast<std::size_t>(params.min_points));
}

TEST_CASE("cluster structure is invariant to input order") {
  auto pts = blob(10.0, 0.0, 60, 0.8, 1);
  const auto other = blob(45.0, 120.0, 55, 0.8, 2);
  pts.insert(pts.end(), other.begin(), other.end());
  DbscanParams params;
  params.min_points = 30;
  const DbscanResult base = dbscan(pts, params);

  Rng rng(77);
  auto shuffled = pts;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  const DbscanResult after = dbscan(shuffled, params);
  CHECK(after.clusters.size() == base.clusters.size());
  CHECK(sorted_cluster_sizes(after) == sorted_cluster_sizes(base));

  auto reversed = pts;
  std::reverse(reversed.begin(), reversed.end());
  const DbscanResult rev = dbscan(reversed, params);
  CHECK(rev.clusters.size() == base.clusters.size());
  CHECK(sorted_cluster_sizes(rev) == sorted_cluster_sizes(base));
}

TEST_CASE("localization counts and places four sources") {
  Scene scene;
  scene.sources.push_back({40.0, 10.0, 5.0, 1.0});
  scene.sources.push_back({130.0, 25.0, 5.0, 1.0});
  scene.sources.push_back({-140.0, 20.0, 5.0, 1.0});
  scene.sources.push_back({-50.0, 35.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  sim.seed = 1;
  const ItdSignal sig = synthesize_itd(scene, arr, sim);
  DbscanParams params;
  params.seed = 101;
  const LocalizationResult res = localize_dbscan(sig, params);
  REQUIRE(res.source_count == 4);
  for (const auto& src : scene.sources) {
    double best = 1e9;
    for (const auto& est : res.estimates)
      best = std::min(best, orientation_distance(est.theta_deg, est.phi_deg,
                                                 src.elevation_deg, src.azimuth_deg));
    CHECK(best < 6.0);
  }
  for (std::size_t i = 1; i < res.estimates.size(); ++i)
    CHECK(res.estimates[i - 1].support >= res.estimates[i].support);
  CHECK(res.estimates[0].confidence_pct == doctest::Approx(100.0));
}

TEST_CASE("single source localization is tight") {
  Scene scene;
  scene.sources.push_back({10.0, 45.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  sim.seed = 31;
  const ItdSignal sig = synthesize_itd(scene, arr, sim);
  DbscanParams params;
  params.seed = 32;
  DbscanDetail detail;
  const LocalizationResult res = localize_dbscan(sig, params, &detail);
  REQUIRE(res.source_count == 1);
  CHECK(angular_distance(res.estimates[0].phi_deg, 10.0) < 2.82);
  CHECK(std::abs(res.estimates[0].theta_deg - 45.0) < 1.71);
  CHECK(detail.points.size() == 10000);
  CHECK(detail.labels.size() == 10000);
}

TEST_CASE("pure noise yields no sources under sparse mapping") {
  const ItdSignal sig = noise_only_signal(0.003, 40);
  DbscanParams params;
  params.n_map = 100;
  params.epsilon_deg = 0.5;
  params.min_points = 40;
  params.seed = 41;
  const LocalizationResult res = localize_dbscan(sig, params);
  CHECK(res.source_count == 0);
  CHECK(res.estimates.empty());
}

TEST_CASE("localization is deterministic") {
  Scene scene;
  scene.sources.push_back({-120.0, 15.0, 5.0, 1.0});
  scene.sources.push_back({60.0, 35.0, 5.0, 1.0});
  ArrayConfig arr;
  SimParams sim;
  sim.seed = 51;
  const ItdSignal sig = synthesize_itd(scene, arr, sim);
  DbscanParams params;
  params.seed = 52;
  const LocalizationResult a = localize_dbscan(sig, params);
  const LocalizationResult b = localize_dbscan(sig, params);
  REQUIRE(a.source_count == b.source_count);
  REQUIRE(a.estimates.size() == b.estimates.size());
  for (std::size_t i = 0; i < a.estimates.size(); ++i) {
    CHECK(a.estimates[i].theta_deg == b.estimates[i].theta_deg);
    CHECK(a.estimates[i].phi_deg == b.estimates[i].phi_deg);
    CHECK(a.estimates[i].support == b.estimates[i].support);
  }
}

TEST_CASE("parameter validation") {
  DbscanParams params;
  params.epsilon_deg = 0.0;
  CHECK_THROWS_AS(validate(params), InvalidParam);
  params.epsilon_deg = 3.0;
  params.min_points = 1;
  CHECK_THROWS_AS(validate(params), InvalidParam);
  params.min_points = 40;
  params.n_map = 30;
  CHECK_THROWS_AS(validate(params), InvalidParam);
}

} // TEST_SUITE
