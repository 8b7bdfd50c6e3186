#pragma once
// Consensus-based localization: repeated two-point sinusoid fits at the known
// rotation frequency, keeping the candidate with the most inliers, removing
// those inliers, and repeating. Relative confidence thresholding then decides
// how many of the fitted sinusoids count as sources.

#include <cstdint>
#include <vector>

#include "mssl/types.hpp"

namespace mssl {

struct RansacParams {
  int n_iter = 5000;                       // candidate draws per fitted source
  double sigma_conf_m = 0.015688;          // vertical inlier band around a candidate
  double confidence_threshold_pct = 10.0;  // qualifying cutoff relative to the best fit
  int max_sources = 12;                    // hard cap on fitted sinusoids
  int min_inliers_abs = 5;                 // stop when the best fit falls below this
  std::uint64_t seed = 0;
};
void validate(const RansacParams& params);

struct FitRecord {
  SineFit fit;
  int count = 0;
  std::vector<int> inlier_indices;  // indices into the ItdSignal samples
};

/// Best two-point sinusoid over n_iter seeded draws: maximum inlier count,
/// ties resolved to the earliest draw. Throws InsufficientData when fewer
/// than two samples exist or no draw produced a solvable pair.
FitRecord ransac_fit_once(const ItdSignal& itd, const RansacParams& params);

/// Every fitted sinusoid in discovery order, qualified or not.
struct RansacTrace {
  struct Entry {
    SineFit fit;
    double theta_deg = 0.0;
    int count = 0;
    double confidence_pct = 0.0;
    bool qualified = false;
  };
  std::vector<Entry> records;
};

/// Sequential fit-and-remove over the signal, then confidence thresholding:
/// estimates are the fits whose inlier count reaches
/// confidence_threshold_pct percent of the largest count. Estimates keep
/// discovery order.
LocalizationResult localize_ransac(const ItdSignal& itd, const RansacParams& params,
                                   RansacTrace* trace = nullptr);

}  // namespace mssl
