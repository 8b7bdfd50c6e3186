#include "mssl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mssl/rng.hpp"

namespace mssl {

const char* estimator_name(EstimatorKind kind) {
  return kind == EstimatorKind::kDbscan ? "dbscan" : "ransac";
}

void validate(const EvalConfig& config) {
  if (config.k_values.empty()) throw InvalidParam("k_values must not be empty");
  for (int k : config.k_values) {
    if (k < 1) throw InvalidParam("k_values entries must be at least 1");
  }
  std::vector<int> sorted = config.k_values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidParam("k_values entries must be distinct");
  if (config.runs_per_k < 1) throw InvalidParam("runs_per_k must be at least 1");
  if (!config.run_dbscan && !config.run_ransac)
    throw InvalidParam("at least one estimator must be enabled");
  validate(config.array);
  validate(config.sim);
  validate(config.dbscan);
  validate(config.ransac);
}

MatchResult match_estimates(std::span<const SourceSpec> truth,
                            std::span<const OrientationEstimate> estimates) {
  const int nt = static_cast<int>(truth.size());
  const int ne = static_cast<int>(estimates.size());
  MatchResult res;
  std::vector<char> t_used(nt, 0), e_used(ne, 0);

  const int n_pairs = std::min(nt, ne);
  for (int round = 0; round < n_pairs; ++round) {
    double best = std::numeric_limits<double>::infinity();
    int bt = -1, be = -1;
    for (int t = 0; t < nt; ++t) {
      if (t_used[t]) continue;
      for (int e = 0; e < ne; ++e) {
        if (e_used[e]) continue;
        const double d = orientation_distance(truth[t].elevation_deg, truth[t].azimuth_deg,
                                              estimates[e].theta_deg, estimates[e].phi_deg);
        if (d < best) {
          best = d;
          bt = t;
          be = e;
        }
      }
    }
    t_used[bt] = 1;
    e_used[be] = 1;
    res.pairs.emplace_back(bt, be);
  }
  for (int t = 0; t < nt; ++t)
    if (!t_used[t]) res.unmatched_truth.push_back(t);
  for (int e = 0; e < ne; ++e)
    if (!e_used[e]) res.unmatched_estimates.push_back(e);
  return res;
}

long ConfusionMatrix::row_sum(int row) const {
  long s = 0;
  for (long v : counts[row]) s += v;
  return s;
}

double ConfusionMatrix::correct_rate(int row) const {
  const int k = k_values[row];
  const long total = row_sum(row);
  if (total == 0) return 0.0;
  const long correct =
      (k < static_cast<int>(counts[row].size())) ? counts[row][k] : 0;
  return static_cast<double>(correct) / static_cast<double>(total);
}

long ConfusionMatrix::total_correct() const {
  long s = 0;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    const int k = k_values[r];
    if (k < static_cast<int>(counts[r].size())) s += counts[r][k];
  }
  return s;
}

double MaeReport::mean_orientation_mae() const {
  double sum = 0.0;
  int n = 0;
  for (const auto& row : rows) {
    if (row.correct_runs > 0) {
      sum += 0.5 * (row.mae_phi_deg + row.mae_theta_deg);
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

namespace {

RunRecord score_run(const Scene& scene, const LocalizationResult& loc, int k, int run) {
  RunRecord rec;
  rec.true_k = k;
  rec.run = run;
  rec.khat = loc.source_count;
  rec.correct = (loc.source_count == k);

  const MatchResult match = match_estimates(scene.sources, loc.estimates);
  rec.matched = static_cast<int>(match.pairs.size());
  rec.misses = static_cast<int>(match.unmatched_truth.size());
  rec.false_alarms = static_cast<int>(match.unmatched_estimates.size());
  for (const auto& [t, e] : match.pairs) {
    rec.sum_abs_phi_err_deg +=
        angular_distance(loc.estimates[e].phi_deg, scene.sources[t].azimuth_deg);
    rec.sum_abs_theta_err_deg +=
        std::fabs(loc.estimates[e].theta_deg - scene.sources[t].elevation_deg);
  }
  return rec;
}

RunRecord failed_run(int k, int run) {
  RunRecord rec;
  rec.true_k = k;
  rec.run = run;
  rec.khat = 0;
  rec.correct = false;
  rec.failed = true;
  rec.misses = k;
  return rec;
}

}  // namespace

namespace detail {

EvalCell eval_cell(const EvalConfig& config, int k, int run) {
  EvalCell cell;
  cell.dbscan = failed_run(k, run);
  cell.ransac = failed_run(k, run);

  const std::uint64_t run_base =
      derive_seed(derive_seed(config.seed, static_cast<std::uint64_t>(k)),
                  static_cast<std::uint64_t>(run));

  Scene scene;
  ItdSignal itd;
  try {
    scene = random_scene(k, derive_seed(run_base, 0), config.scene);
    SimParams sim = config.sim;
    sim.seed = derive_seed(run_base, 1);
    itd = synthesize_itd(scene, config.array, sim);
  } catch (const Error&) {
    return cell;  // both estimators stay failed
  }

  if (config.run_dbscan) {
    try {
      DbscanParams p = config.dbscan;
      p.seed = derive_seed(run_base, 2);
      cell.dbscan = score_run(scene, localize_dbscan(itd, p), k, run);
    } catch (const Error&) {
      cell.dbscan = failed_run(k, run);
    }
  }
  if (config.run_ransac) {
    try {
      RansacParams p = config.ransac;
      p.seed = derive_seed(run_base, 3);
      cell.ransac = score_run(scene, localize_ransac(itd, p), k, run);
    } catch (const Error&) {
      cell.ransac = failed_run(k, run);
    }
  }
  return cell;
}

std::vector<EvalOutput> assemble_outputs(const EvalConfig& config,
                                         std::span<const EvalCell> cells) {
  const int nk = static_cast<int>(config.k_values.size());
  const int runs = config.runs_per_k;

  std::vector<EvalOutput> outputs;
  for (int which = 0; which < 2; ++which) {
    const bool enabled = which == 0 ? config.run_dbscan : config.run_ransac;
    if (!enabled) continue;

    EvalOutput out;
    out.kind = which == 0 ? EstimatorKind::kDbscan : EstimatorKind::kRansac;
    out.runs.reserve(cells.size());
    int max_khat = 0;
    for (const auto& cell : cells) {
      const RunRecord& rec = which == 0 ? cell.dbscan : cell.ransac;
      out.runs.push_back(rec);
      max_khat = std::max(max_khat, rec.khat);
    }
    for (int k : config.k_values) max_khat = std::max(max_khat, k);

    out.confusion.k_values = config.k_values;
    out.confusion.runs_per_k = runs;
    out.confusion.counts.assign(nk, std::vector<long>(max_khat + 1, 0));
    out.mae.rows.assign(nk, MaeRow{});

    std::vector<double> phi_sum(nk, 0.0), theta_sum(nk, 0.0);
    for (const auto& rec : out.runs) {
      int row = 0;
      while (config.k_values[row] != rec.true_k) ++row;
      out.confusion.counts[row][rec.khat] += 1;

      MaeRow& mrow = out.mae.rows[row];
      mrow.true_k = rec.true_k;
      mrow.misses += rec.misses;
      mrow.false_alarms += rec.false_alarms;
      if (rec.correct) {
        mrow.correct_runs += 1;
        mrow.matched_pairs += rec.matched;
        phi_sum[row] += rec.sum_abs_phi_err_deg;
        theta_sum[row] += rec.sum_abs_theta_err_deg;
      }
    }
    for (int r = 0; r < nk; ++r) {
      MaeRow& mrow = out.mae.rows[r];
      mrow.true_k = config.k_values[r];
      if (mrow.matched_pairs > 0) {
        mrow.mae_phi_deg = phi_sum[r] / static_cast<double>(mrow.matched_pairs);
        mrow.mae_theta_deg = theta_sum[r] / static_cast<double>(mrow.matched_pairs);
      }
    }
    outputs.push_back(std::move(out));
  }
  return outputs;
}

}  // namespace detail

std::vector<EvalOutput> run_eval(const EvalConfig& config) {
  validate(config);
  const int nk = static_cast<int>(config.k_values.size());
  const long total = static_cast<long>(nk) * config.runs_per_k;

  std::vector<detail::EvalCell> cells(total);
#pragma omp parallel for schedule(dynamic)
  for (long g = 0; g < total; ++g) {
    const int k = config.k_values[g / config.runs_per_k];
    const int run = static_cast<int>(g % config.runs_per_k);
    cells[g] = detail::eval_cell(config, k, run);
  }
  return detail::assemble_outputs(config, cells);
}

std::string summarize(std::span<const EvalOutput> outputs) {
  std::string s;
  char line[256];
  for (const auto& out : outputs) {
    std::snprintf(line, sizeof line, "estimator: %s\n", estimator_name(out.kind));
    s += line;
    s += "  K  runs  correct  rate    mae_phi  mae_theta  misses  false_alarms\n";
    const auto& conf = out.confusion;
    for (std::size_t r = 0; r < conf.k_values.size(); ++r) {
      const auto& row = out.mae.rows[r];
      std::snprintf(line, sizeof line,
                    "  %-2d %-5ld %-8ld %-7.3f %-8.2f %-10.2f %-7ld %ld\n",
                    conf.k_values[r], conf.row_sum(r),
                    (conf.k_values[r] < static_cast<int>(conf.counts[r].size())
                         ? conf.counts[r][conf.k_values[r]]
                         : 0L),
                    conf.correct_rate(r), row.mae_phi_deg, row.mae_theta_deg,
                    row.misses, row.false_alarms);
      s += line;
    }
    std::snprintf(line, sizeof line, "  total correct: %ld / %ld\n",
                  conf.total_correct(),
                  static_cast<long>(conf.k_values.size()) * conf.runs_per_k);
    s += line;

    s += "  confusion (rows true K, cols estimated 0..n):\n";
    for (std::size_t r = 0; r < conf.counts.size(); ++r) {
      std::snprintf(line, sizeof line, "  K=%d:", conf.k_values[r]);
      s += line;
      for (long v : conf.counts[r]) {
        std::snprintf(line, sizeof line, " %5ld", v);
        s += line;
      }
      s += "\n";
    }
    s += "\n";
  }
  return s;
}

}  // namespace mssl
