#include "mssl/ransac.hpp"

#include <cassert>
#include <limits>
#include <numeric>

#include "mssl/model.hpp"
#include "mssl/rng.hpp"

namespace mssl {

void validate(const RansacParams& params) {
  if (params.n_iter < 1) throw InvalidParam("n_iter must be at least 1");
  if (!(params.sigma_conf_m > 0.0)) throw InvalidParam("sigma_conf_m must be positive");
  if (!(params.confidence_threshold_pct > 0.0 && params.confidence_threshold_pct <= 100.0))
    throw InvalidParam("confidence_threshold_pct must be in (0, 100]");
  if (params.max_sources < 1) throw InvalidParam("max_sources must be at least 1");
  if (params.min_inliers_abs < 2) throw InvalidParam("min_inliers_abs must be at least 2");
}

namespace {

constexpr int kPairAttempts = 100;  // redraw budget per candidate draw

struct BestCandidate {
  long draw = std::numeric_limits<long>::max();
  int count = -1;  // -1 = no valid candidate seen
  SinusoidCoeffs coeffs;
};

// Best candidate over n_iter seeded draws on the (compacted) sample arrays.
// Deterministic regardless of thread count: candidates are ranked by
// (count desc, draw index asc) and every draw uses its own derived stream.
BestCandidate best_fit(const std::vector<double>& d, const std::vector<double>& s,
                       const std::vector<double>& c, double sigma, int n_iter,
                       std::uint64_t seed) {
  const int m = static_cast<int>(d.size());
  BestCandidate best;
#pragma omp parallel
  {
    BestCandidate local;
#pragma omp for schedule(static) nowait
    for (long j = 0; j < n_iter; ++j) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(j));
      SinusoidCoeffs coeffs;
      bool valid = false;
      for (int a = 0; a < kPairAttempts && !valid; ++a) {
        const int i1 = static_cast<int>(rng.below(m));
        int i2 = static_cast<int>(rng.below(m - 1));
        if (i2 >= i1) ++i2;
        valid = solve_pair_coeffs(d[i1], s[i1], c[i1], d[i2], s[i2], c[i2], coeffs) ==
                PairSolveStatus::kOk;
      }
      if (!valid) continue;

      int cnt = 0;
      for (int t = 0; t < m; ++t) {
        const double r = d[t] - (coeffs.a_sin * s[t] + coeffs.a_cos * c[t]);
        cnt += (std::fabs(r) <= sigma) ? 1 : 0;
      }
      if (cnt > local.count || (cnt == local.count && j < local.draw)) {
        local.draw = j;
        local.count = cnt;
        local.coeffs = coeffs;
      }
    }
#pragma omp critical
    {
      if (local.count > best.count ||
          (local.count == best.count && local.draw < best.draw)) {
        best = local;
      }
    }
  }
  return best;
}

}  // namespace

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

  const BestCandidate best =
      best_fit(dv, sv, cv, params.sigma_conf_m, params.n_iter, params.seed);
  if (best.count < 0)
    throw InsufficientData("no solvable sample pair in the draw budget (signal mostly zero?)");

  FitRecord rec;
  rec.fit = to_sine_fit(best.coeffs);
  rec.count = best.count;
  for (int i = 0; i < n; ++i) {
    const double r = dv[i] - (best.coeffs.a_sin * sv[i] + best.coeffs.a_cos * cv[i]);
    if (std::fabs(r) <= params.sigma_conf_m) rec.inlier_indices.push_back(i);
  }
  assert(static_cast<int>(rec.inlier_indices.size()) == rec.count);
  return rec;
}

LocalizationResult localize_ransac(const ItdSignal& itd, const RansacParams& params,
                                   RansacTrace* trace) {
  validate(params);
  validate(itd);
  const int n = static_cast<int>(itd.samples.size());
  if (n < 2) throw InsufficientData("localization needs at least 2 samples");
  if (!itd.covers_full_rotation())
    throw InsufficientData("localization needs a full rotation of ITD samples");

  std::vector<double> sv(n), cv(n), dv(n);
  for (int i = 0; i < n; ++i) {
    const double wt = itd.array.omega_rad_s * itd.samples[i].t_s;
    sv[i] = std::sin(wt);
    cv[i] = std::cos(wt);
    dv[i] = itd.samples[i].d_m;
  }

  struct Rec {
    SineFit fit;
    int count = 0;
  };
  std::vector<Rec> recs;
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);

  std::vector<double> ad, as, ac;
  while (static_cast<int>(active.size()) >= 2 &&
         static_cast<int>(recs.size()) < params.max_sources) {
    const int m = static_cast<int>(active.size());
    ad.resize(m);
    as.resize(m);
    ac.resize(m);
    for (int i = 0; i < m; ++i) {
      ad[i] = dv[active[i]];
      as[i] = sv[active[i]];
      ac[i] = cv[active[i]];
    }

    const std::uint64_t fit_seed = derive_seed(params.seed, recs.size());
    const BestCandidate best =
        best_fit(ad, as, ac, params.sigma_conf_m, params.n_iter, fit_seed);
    if (best.count < 0) break;                      // nothing solvable remains
    if (best.count < params.min_inliers_abs) break; // consensus too weak to be a source

    std::vector<int> next_active;
    next_active.reserve(active.size());
    int removed = 0;
    for (int idx : active) {
      const double r = dv[idx] - (best.coeffs.a_sin * sv[idx] + best.coeffs.a_cos * cv[idx]);
      if (std::fabs(r) <= params.sigma_conf_m)
        ++removed;
      else
        next_active.push_back(idx);
    }
    assert(removed == best.count);
    (void)removed;

    recs.push_back({to_sine_fit(best.coeffs), best.count});
    active.swap(next_active);
  }

  LocalizationResult out;
  if (trace) trace->records.clear();
  if (recs.empty()) return out;

  int max_count = 0;
  for (const auto& r : recs) max_count = std::max(max_count, r.count);
  const double b = itd.array.half_baseline_m;
  for (const auto& r : recs) {
    const double conf = 100.0 * static_cast<double>(r.count) / max_count;
    const double theta = theta_from_amplitude(r.fit.amplitude_m, b);
    const bool qualified = conf >= params.confidence_threshold_pct;
    if (qualified) {
      OrientationEstimate e;
      e.theta_deg = theta;
      e.phi_deg = r.fit.phase_deg;
      e.support = r.count;
      e.confidence_pct = conf;
      out.estimates.push_back(e);
    }
    if (trace) trace->records.push_back({r.fit, theta, r.count, conf, qualified});
  }
  out.source_count = static_cast<int>(out.estimates.size());
  return out;
}

}  // namespace mssl
