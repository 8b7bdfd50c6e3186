#include "mssl/dbscan.hpp"

#include <algorithm>
#include <limits>

#include "mssl/model.hpp"
#include "mssl/rng.hpp"

namespace mssl {

namespace {
constexpr int kPairAttempts = 100;  // redraw budget per mapping iteration
}

void validate(const DbscanParams& params) {
  if (!(params.epsilon_deg > 0.0)) throw InvalidParam("epsilon_deg must be positive");
  if (params.min_points < 2) throw InvalidParam("min_points must be at least 2");
  if (params.n_map < params.min_points)
    throw InvalidParam("n_map must be at least min_points");
}

std::vector<OrientationPoint> map_to_orientation(const ItdSignal& itd,
                                                 const DbscanParams& params) {
  validate(params);
  validate(itd);
  const int n = static_cast<int>(itd.samples.size());
  if (n < 2) throw InsufficientData("mapping needs at least 2 samples");
  if (!itd.covers_full_rotation())
    throw InsufficientData("mapping needs a full rotation of ITD samples");

  std::vector<double> sv(n), cv(n), dv(n);
  for (int i = 0; i < n; ++i) {
    const double wt = itd.array.omega_rad_s * itd.samples[i].t_s;
    sv[i] = std::sin(wt);
    cv[i] = std::cos(wt);
    dv[i] = itd.samples[i].d_m;
  }

  const double b = itd.array.half_baseline_m;
  std::vector<OrientationPoint> out(params.n_map);
  std::vector<unsigned char> placed(params.n_map, 0);

#pragma omp parallel for schedule(static)
  for (int iter = 0; iter < params.n_map; ++iter) {
    Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(iter));
    for (int attempt = 0; attempt < kPairAttempts; ++attempt) {
      const int i = static_cast<int>(rng.below(n));
      int j = static_cast<int>(rng.below(n - 1));
      if (j >= i) ++j;
      SinusoidCoeffs coeffs;
      if (solve_pair_coeffs(dv[i], sv[i], cv[i], dv[j], sv[j], cv[j], coeffs) !=
          PairSolveStatus::kOk)
        continue;
      const SineFit fit = to_sine_fit(coeffs);
      // Pairs mixing different sources often imply amplitudes beyond the
      // physical bound 2b, where acos has no solution. Redraw instead of
      // clamping: clamped points pile up along theta = 0 and cluster there.
      if (fit.amplitude_m > 2.0 * b) continue;
      out[iter] = {theta_from_amplitude_unchecked(fit.amplitude_m, b), fit.phase_deg};
      placed[iter] = 1;
      break;
    }
  }

  for (int iter = 0; iter < params.n_map; ++iter) {
    if (!placed[iter])
      throw InsufficientData("no usable sample pair found while mapping (signal mostly zero?)");
  }
  return out;
}

DbscanResult dbscan(std::span<const OrientationPoint> points, const DbscanParams& params) {
  validate(params);
  const int n = static_cast<int>(points.size());
  DbscanResult res;
  res.labels.assign(n, -1);
  if (n == 0) return res;

  std::vector<double> th(n), ph(n);
  for (int i = 0; i < n; ++i) {
    th[i] = points[i].theta_deg;
    ph[i] = points[i].phi_deg;
  }
  const double eps2 = params.epsilon_deg * params.epsilon_deg;

  // Pass 1: neighborhood sizes (point itself included) -> core flags.
  std::vector<int> counts(n, 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double ti = th[i];
    const double pi = ph[i];
    int cnt = 0;
    for (int j = 0; j < n; ++j) {
      const double dt = ti - th[j];
      double dp = std::fabs(pi - ph[j]);
      dp = std::min(dp, 360.0 - dp);
      cnt += (dt * dt + dp * dp <= eps2) ? 1 : 0;
    }
    counts[i] = cnt;
  }

  std::vector<int> cores;
  for (int i = 0; i < n; ++i) {
    if (counts[i] >= params.min_points) cores.push_back(i);
  }

  // Pass 2: connected components of core points under eps-adjacency, grown
  // breadth-first. Each round tests the still-unlabeled cores against the
  // current frontier only.
  int n_clusters = 0;
  std::vector<int> pending = cores;
  std::vector<int> frontier, joined, still;
  std::vector<unsigned char> join;
  for (int s : cores) {
    if (res.labels[s] != -1) continue;
    res.labels[s] = n_clusters;
    frontier.assign(1, s);
    while (!frontier.empty()) {
      still.clear();
      for (int p : pending) {
        if (res.labels[p] == -1) still.push_back(p);
      }
      pending.swap(still);
      if (pending.empty()) break;

      join.assign(pending.size(), 0);
#pragma omp parallel for schedule(static)
      for (long pi = 0; pi < static_cast<long>(pending.size()); ++pi) {
        const int p = pending[pi];
        const double tp = th[p];
        const double pp = ph[p];
        for (int f : frontier) {
          const double dt = tp - th[f];
          double dp = std::fabs(pp - ph[f]);
          dp = std::min(dp, 360.0 - dp);
          if (dt * dt + dp * dp <= eps2) {
            join[pi] = 1;
            break;
          }
        }
      }
      joined.clear();
      for (std::size_t pi = 0; pi < pending.size(); ++pi) {
        if (join[pi]) {
          res.labels[pending[pi]] = n_clusters;
          joined.push_back(pending[pi]);
        }
      }
      frontier.swap(joined);
    }
    ++n_clusters;
  }

  // Pass 3: border points join the nearest core point within eps; ties go to
  // the lowest core index. Everything else stays noise.
  std::vector<unsigned char> is_core(n, 0);
  for (int c : cores) is_core[c] = 1;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    if (is_core[i]) continue;
    const double ti = th[i];
    const double pi = ph[i];
    double best = std::numeric_limits<double>::infinity();
    int label = -1;
    for (int c : cores) {
      const double dt = ti - th[c];
      double dp = std::fabs(pi - ph[c]);
      dp = std::min(dp, 360.0 - dp);
      const double d2 = dt * dt + dp * dp;
      if (d2 <= eps2 && d2 < best) {
        best = d2;
        label = res.labels[c];
      }
    }
    res.labels[i] = label;
  }

  res.clusters.resize(n_clusters);
  for (int i = 0; i < n; ++i) {
    if (res.labels[i] >= 0)
      res.clusters[res.labels[i]].members.push_back(points[i]);
    else
      res.noise.push_back(points[i]);
  }
  for (auto& cl : res.clusters) {
    double tsum = 0.0, s = 0.0, c = 0.0;
    for (const auto& p : cl.members) {
      tsum += p.theta_deg;
      s += std::sin(deg2rad(p.phi_deg));
      c += std::cos(deg2rad(p.phi_deg));
    }
    cl.centroid.theta_deg = tsum / static_cast<double>(cl.members.size());
    cl.centroid.phi_deg = wrap_degrees_signed(rad2deg(std::atan2(s, c)));
  }
  return res;
}

LocalizationResult localize_dbscan(const ItdSignal& itd, const DbscanParams& params,
                                   DbscanDetail* detail) {
  std::vector<OrientationPoint> points = map_to_orientation(itd, params);
  DbscanResult clustered = dbscan(points, params);

  LocalizationResult out;
  out.source_count = static_cast<int>(clustered.clusters.size());
  std::size_t largest = 0;
  for (const auto& cl : clustered.clusters) largest = std::max(largest, cl.members.size());
  for (const auto& cl : clustered.clusters) {
    OrientationEstimate e;
    e.theta_deg = cl.centroid.theta_deg;
    e.phi_deg = cl.centroid.phi_deg;
    e.support = static_cast<int>(cl.members.size());
    e.confidence_pct = 100.0 * static_cast<double>(cl.members.size()) /
                       static_cast<double>(largest);
    out.estimates.push_back(e);
  }
  std::stable_sort(out.estimates.begin(), out.estimates.end(),
                   [](const OrientationEstimate& a, const OrientationEstimate& b) {
                     return a.support > b.support;
                   });

  if (detail) {
    detail->points = std::move(points);
    detail->labels = std::move(clustered.labels);
  }
  return out;
}

}  // namespace mssl
