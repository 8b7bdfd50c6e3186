#include "mssl/reference.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>

#include "mssl/model.hpp"
#include "mssl/rng.hpp"

namespace mssl::reference {

std::vector<OrientationPoint> map_to_orientation(const ItdSignal& itd,
                                                 const DbscanParams& params) {
  validate(params);
  validate(itd);
  const int n = static_cast<int>(itd.samples.size());
  if (n < 2) throw InsufficientData("mapping needs at least 2 samples");
  if (!itd.covers_full_rotation())
    throw InsufficientData("mapping needs a full rotation of ITD samples");

  const double b = itd.array.half_baseline_m;
  const double omega = itd.array.omega_rad_s;
  std::vector<OrientationPoint> out;
  out.reserve(params.n_map);
  for (int iter = 0; iter < params.n_map; ++iter) {
    Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(iter));
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      const int i = static_cast<int>(rng.below(n));
      int j = static_cast<int>(rng.below(n - 1));
      if (j >= i) ++j;
      try {
        const SineFit fit = solve_two_point(itd.samples[i].d_m, itd.samples[i].t_s,
                                            itd.samples[j].d_m, itd.samples[j].t_s, omega);
        if (fit.amplitude_m > 2.0 * b) continue;  // no acos solution: redraw
        out.push_back({theta_from_amplitude(fit.amplitude_m, b), fit.phase_deg});
        placed = true;
      } catch (const Error&) {
        // degenerate or all-zero pair: redraw
      }
    }
    if (!placed)
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

  const double eps2 = params.epsilon_deg * params.epsilon_deg;
  auto dist2 = [&](int i, int j) {
    const double dt = points[i].theta_deg - points[j].theta_deg;
    double dp = std::fabs(points[i].phi_deg - points[j].phi_deg);
    dp = std::min(dp, 360.0 - dp);
    return dt * dt + dp * dp;
  };

  std::vector<unsigned char> is_core(n, 0);
  std::vector<int> cores;
  for (int i = 0; i < n; ++i) {
    int cnt = 0;
    for (int j = 0; j < n; ++j) cnt += (dist2(i, j) <= eps2) ? 1 : 0;
    if (cnt >= params.min_points) {
      is_core[i] = 1;
      cores.push_back(i);
    }
  }

  // Connected components of core points: breadth-first from each unlabeled
  // core in ascending index order.
  int n_clusters = 0;
  std::deque<int> queue;
  for (int s : cores) {
    if (res.labels[s] != -1) continue;
    res.labels[s] = n_clusters;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (int c : cores) {
        if (res.labels[c] == -1 && dist2(f, c) <= eps2) {
          res.labels[c] = n_clusters;
          queue.push_back(c);
        }
      }
    }
    ++n_clusters;
  }

  // Border points join the nearest core within eps, ties to the lowest core
  // index.
  for (int i = 0; i < n; ++i) {
    if (is_core[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    int label = -1;
    for (int c : cores) {
      const double d2 = dist2(i, c);
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

FitRecord ransac_fit_once(const ItdSignal& itd, const RansacParams& params) {
  validate(params);
  validate(itd);
  const int n = static_cast<int>(itd.samples.size());
  if (n < 2) throw InsufficientData("fit needs at least 2 samples");

  std::vector<double> sv(n), cv(n), dv(n);
  for (int i = 0; i < n; ++i) {
    const double wt = itd.array.omega_rad_s * itd.samples[i].t_s;
    sv[i] = std::sin(wt);
    cv[i] = std::cos(wt);
    dv[i] = itd.samples[i].d_m;
  }

  long best_draw = std::numeric_limits<long>::max();
  int best_count = -1;
  SinusoidCoeffs best_coeffs;
  for (long j = 0; j < params.n_iter; ++j) {
    Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(j));
    SinusoidCoeffs coeffs;
    bool valid = false;
    for (int a = 0; a < 100 && !valid; ++a) {
      const int i1 = static_cast<int>(rng.below(n));
      int i2 = static_cast<int>(rng.below(n - 1));
      if (i2 >= i1) ++i2;
      valid = solve_pair_coeffs(dv[i1], sv[i1], cv[i1], dv[i2], sv[i2], cv[i2], coeffs) ==
              PairSolveStatus::kOk;
    }
    if (!valid) continue;

    int cnt = 0;
    for (int t = 0; t < n; ++t) {
      const double r = dv[t] - (coeffs.a_sin * sv[t] + coeffs.a_cos * cv[t]);
      cnt += (std::fabs(r) <= params.sigma_conf_m) ? 1 : 0;
    }
    if (cnt > best_count || (cnt == best_count && j < best_draw)) {
      best_draw = j;
      best_count = cnt;
      best_coeffs = coeffs;
    }
  }
  if (best_count < 0)
    throw InsufficientData("no solvable sample pair in the draw budget (signal mostly zero?)");

  FitRecord rec;
  rec.fit = to_sine_fit(best_coeffs);
  rec.count = best_count;
  for (int i = 0; i < n; ++i) {
    const double r = dv[i] - (best_coeffs.a_sin * sv[i] + best_coeffs.a_cos * cv[i]);
    if (std::fabs(r) <= params.sigma_conf_m) rec.inlier_indices.push_back(i);
  }
  assert(static_cast<int>(rec.inlier_indices.size()) == rec.count);
  return rec;
}

std::vector<EvalOutput> run_eval(const EvalConfig& config) {
  validate(config);
  const int nk = static_cast<int>(config.k_values.size());
  const long total = static_cast<long>(nk) * config.runs_per_k;

  std::vector<mssl::detail::EvalCell> cells(total);
  for (long g = 0; g < total; ++g) {
    const int k = config.k_values[g / config.runs_per_k];
    const int run = static_cast<int>(g % config.runs_per_k);
    cells[g] = mssl::detail::eval_cell(config, k, run);
  }
  return mssl::detail::assemble_outputs(config, cells);
}

}  // namespace mssl::reference
