#pragma once
// CSV import/export for the CLI: ITD signals, mapped orientation points,
// fit traces, and evaluation tables.

#include <span>
#include <string>

#include "mssl/dbscan.hpp"
#include "mssl/eval.hpp"
#include "mssl/ransac.hpp"
#include "mssl/types.hpp"

namespace mssl {

/// Header "t_s,d_m", one row per sample, full round-trip precision.
void write_itd_csv(const std::string& path, const ItdSignal& itd);

/// Reads an ITD CSV; the array (not stored in the file) is supplied by the
/// caller. Throws IoError / ParseError with a line number on bad content.
ItdSignal read_itd_csv(const std::string& path, const ArrayConfig& array);

/// Header "theta_deg,phi_deg,cluster_id"; cluster_id -1 marks noise.
void write_points_csv(const std::string& path, std::span<const OrientationPoint> points,
                      std::span<const int> labels);

/// Header "source_rank,A_m,phi_deg,theta_deg,count,confidence_pct"; one row
/// per fitted sinusoid in discovery order (rank 1 first).
void write_trace_csv(const std::string& path, const RansacTrace& trace);

void write_confusion_csv(const std::string& path, const ConfusionMatrix& confusion);
void write_mae_csv(const std::string& path, const MaeReport& mae, const ConfusionMatrix& confusion);
void write_runlog_csv(const std::string& path, EstimatorKind kind,
                      std::span<const RunRecord> runs);

}  // namespace mssl
