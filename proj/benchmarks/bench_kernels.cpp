// Timing comparison of the OpenMP kernels against their serial reference
// implementations, with an equality check on every result.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mssl/dbscan.hpp"
#include "mssl/eval.hpp"
#include "mssl/ransac.hpp"
#include "mssl/reference.hpp"
#include "mssl/scene.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same_points(const std::vector<mssl::OrientationPoint>& a,
                 const std::vector<mssl::OrientationPoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].theta_deg != b[i].theta_deg || a[i].phi_deg != b[i].phi_deg) return false;
  }
  return true;
}

void report(const char* name, double t_par, double t_ser, bool identical) {
  std::printf("%-24s %10.3f ms %10.3f ms %8.2fx   %s\n", name, t_par * 1e3, t_ser * 1e3,
              t_ser / t_par, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled, single-threaded build\n");
#endif
  std::printf("%-24s %13s %13s %9s\n", "kernel", "parallel", "serial ref", "speedup");

  const mssl::ArrayConfig array;
  const mssl::Scene scene = mssl::random_scene(3, 7);
  mssl::SimParams sim;
  sim.seed = 11;
  const mssl::ItdSignal itd = mssl::synthesize_itd(scene, array, sim);

  {
    mssl::DbscanParams params;
    params.seed = 3;
    auto t0 = Clock::now();
    const auto pts_par = mssl::map_to_orientation(itd, params);
    const double t_par = seconds_since(t0);
    t0 = Clock::now();
    const auto pts_ser = mssl::reference::map_to_orientation(itd, params);
    const double t_ser = seconds_since(t0);
    report("map_to_orientation", t_par, t_ser, same_points(pts_par, pts_ser));

    t0 = Clock::now();
    const auto db_par = mssl::dbscan(pts_par, params);
    const double td_par = seconds_since(t0);
    t0 = Clock::now();
    const auto db_ser = mssl::reference::dbscan(pts_ser, params);
    const double td_ser = seconds_since(t0);
    report("dbscan", td_par, td_ser, db_par.labels == db_ser.labels);
  }

  {
    mssl::RansacParams params;
    params.seed = 5;
    auto t0 = Clock::now();
    const auto fit_par = mssl::ransac_fit_once(itd, params);
    const double t_par = seconds_since(t0);
    t0 = Clock::now();
    const auto fit_ser = mssl::reference::ransac_fit_once(itd, params);
    const double t_ser = seconds_since(t0);
    const bool same = fit_par.count == fit_ser.count &&
                      fit_par.fit.amplitude_m == fit_ser.fit.amplitude_m &&
                      fit_par.fit.phase_deg == fit_ser.fit.phase_deg &&
                      fit_par.inlier_indices == fit_ser.inlier_indices;
    report("ransac_fit_once", t_par, t_ser, same);
  }

  {
    mssl::EvalConfig config;
    config.k_values = {1, 2};
    config.runs_per_k = 4;
    config.seed = 17;
    auto t0 = Clock::now();
    const auto out_par = mssl::run_eval(config);
    const double t_par = seconds_since(t0);
    t0 = Clock::now();
    const auto out_ser = mssl::reference::run_eval(config);
    const double t_ser = seconds_since(t0);
    bool same = out_par.size() == out_ser.size();
    for (std::size_t i = 0; same && i < out_par.size(); ++i) {
      same = out_par[i].confusion.counts == out_ser[i].confusion.counts;
      for (std::size_t r = 0; same && r < out_par[i].runs.size(); ++r) {
        same = out_par[i].runs[r].khat == out_ser[i].runs[r].khat &&
               out_par[i].runs[r].sum_abs_phi_err_deg == out_ser[i].runs[r].sum_abs_phi_err_deg;
      }
    }
    report("run_eval (2x4 runs)", t_par, t_ser, same);
  }

  return 0;
}
