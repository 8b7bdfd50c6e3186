#pragma once
// Density-based localization: random ITD sample pairs are mapped into the
// (theta, phi) orientation domain, clustered with DBSCAN under a wrap-aware
// metric, and each cluster centroid becomes one source estimate.

#include <cstdint>
#include <span>
#include <vector>

#include "mssl/types.hpp"

namespace mssl {

struct DbscanParams {
  double epsilon_deg = 3.0;  // neighborhood radius in the orientation plane
  int min_points = 40;       // density threshold, the point itself included
  int n_map = 10000;         // two-point mapping iterations
  std::uint64_t seed = 0;
};
void validate(const DbscanParams& params);

struct Cluster {
  std::vector<OrientationPoint> members;
  OrientationPoint centroid;  // arithmetic mean theta, circular mean phi
};

struct DbscanResult {
  std::vector<Cluster> clusters;
  std::vector<OrientationPoint> noise;
  std::vector<int> labels;  // per input point: cluster index, or -1 for noise
};

/// n_map two-point mappings of the ITD signal onto orientation points.
/// Degenerate and all-zero pairs are redrawn with a bounded budget; throws
/// InsufficientData when a budget is exhausted (signal mostly zero), the
/// signal has fewer than 2 samples, or it covers less than one rotation.
std::vector<OrientationPoint> map_to_orientation(const ItdSignal& itd,
                                                 const DbscanParams& params);

/// DBSCAN in the orientation plane: distance sqrt(dtheta^2 + dphi_wrapped^2)
/// in degrees. Border points attach to the nearest core point in range, a
/// deterministic refinement of the canonical first-reached rule.
DbscanResult dbscan(std::span<const OrientationPoint> points, const DbscanParams& params);

struct DbscanDetail {
  std::vector<OrientationPoint> points;
  std::vector<int> labels;
};

/// map_to_orientation + dbscan + centroid extraction. Estimates are ordered
/// by cluster size (largest first); confidence is the size relative to the
/// largest cluster.
LocalizationResult localize_dbscan(const ItdSignal& itd, const DbscanParams& params,
                                   DbscanDetail* detail = nullptr);

}  // namespace mssl
