#include "mssl/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

namespace mssl {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Parses one CSV row of exactly `n` doubles; returns false on malformed input.
bool parse_doubles(const std::string& line, double* out, int n) {
  const char* p = line.c_str();
  for (int i = 0; i < n; ++i) {
    char* end = nullptr;
    out[i] = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
    while (*p == ' ' || *p == '\t') ++p;
    if (i + 1 < n) {
      if (*p != ',') return false;
      ++p;
    }
  }
  while (*p == ' ' || *p == '\t') ++p;
  return *p == '\0';
}

}  // namespace

void write_itd_csv(const std::string& path, const ItdSignal& itd) {
  std::ofstream out = open_out(path);
  out << "t_s,d_m\n";
  char row[80];
  for (const auto& s : itd.samples) {
    std::snprintf(row, sizeof row, "%.17g,%.17g\n", s.t_s, s.d_m);
    out << row;
  }
  if (!out) throw IoError("write failed for " + path);
}

ItdSignal read_itd_csv(const std::string& path, const ArrayConfig& array) {
  validate(array);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  strip_cr(line);
  if (line != "t_s,d_m") throw ParseError(path + ":1: expected header 't_s,d_m'");

  ItdSignal itd;
  itd.array = array;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    double v[2];
    if (!parse_doubles(line, v, 2))
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed row");
    if (!itd.samples.empty() && !(v[0] > itd.samples.back().t_s))
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": sample times must be strictly increasing");
    itd.samples.push_back({v[0], v[1]});
  }
  return itd;
}

void write_points_csv(const std::string& path, std::span<const OrientationPoint> points,
                      std::span<const int> labels) {
  if (points.size() != labels.size())
    throw InvalidParam("points and labels must have equal length");
  std::ofstream out = open_out(path);
  out << "theta_deg,phi_deg,cluster_id\n";
  char row[96];
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::snprintf(row, sizeof row, "%.10g,%.10g,%d\n", points[i].theta_deg,
                  points[i].phi_deg, labels[i]);
    out << row;
  }
  if (!out) throw IoError("write failed for " + path);
}

void write_trace_csv(const std::string& path, const RansacTrace& trace) {
  std::ofstream out = open_out(path);
  out << "source_rank,A_m,phi_deg,theta_deg,count,confidence_pct\n";
  char row[160];
  int rank = 1;
  for (const auto& e : trace.records) {
    std::snprintf(row, sizeof row, "%d,%.10g,%.10g,%.10g,%d,%.4f\n", rank,
                  e.fit.amplitude_m, e.fit.phase_deg, e.theta_deg, e.count,
                  e.confidence_pct);
    out << row;
    ++rank;
  }
  if (!out) throw IoError("write failed for " + path);
}

void write_confusion_csv(const std::string& path, const ConfusionMatrix& confusion) {
  std::ofstream out = open_out(path);
  out << "true_k";
  const int cols = confusion.counts.empty() ? 0 : static_cast<int>(confusion.counts[0].size());
  for (int c = 0; c < cols; ++c) out << ",khat_" << c;
  out << "\n";
  for (std::size_t r = 0; r < confusion.counts.size(); ++r) {
    out << confusion.k_values[r];
    for (long v : confusion.counts[r]) out << ',' << v;
    out << "\n";
  }
  if (!out) throw IoError("write failed for " + path);
}

void write_mae_csv(const std::string& path, const MaeReport& mae,
                   const ConfusionMatrix& confusion) {
  std::ofstream out = open_out(path);
  out << "true_k,runs,correct_runs,correct_rate,mae_phi_deg,mae_theta_deg,misses,false_alarms\n";
  char row[160];
  for (std::size_t r = 0; r < mae.rows.size(); ++r) {
    const auto& m = mae.rows[r];
    std::snprintf(row, sizeof row, "%d,%ld,%ld,%.4f,%.4f,%.4f,%ld,%ld\n", m.true_k,
                  confusion.row_sum(static_cast<int>(r)), m.correct_runs,
                  confusion.correct_rate(static_cast<int>(r)), m.mae_phi_deg,
                  m.mae_theta_deg, m.misses, m.false_alarms);
    out << row;
  }
  if (!out) throw IoError("write failed for " + path);
}

void write_runlog_csv(const std::string& path, EstimatorKind kind,
                      std::span<const RunRecord> runs) {
  std::ofstream out = open_out(path);
  out << "estimator,true_k,run,khat,correct,failed,matched,misses,false_alarms,"
         "mean_abs_phi_err_deg,mean_abs_theta_err_deg\n";
  char row[200];
  for (const auto& r : runs) {
    const double mphi = r.matched > 0 ? r.sum_abs_phi_err_deg / r.matched : 0.0;
    const double mtheta = r.matched > 0 ? r.sum_abs_theta_err_deg / r.matched : 0.0;
    std::snprintf(row, sizeof row, "%s,%d,%d,%d,%d,%d,%d,%d,%d,%.4f,%.4f\n",
                  estimator_name(kind), r.true_k, r.run, r.khat, r.correct ? 1 : 0,
                  r.failed ? 1 : 0, r.matched, r.misses, r.false_alarms, mphi, mtheta);
    out << row;
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace mssl
