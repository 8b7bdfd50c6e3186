#pragma once
// Serial reference implementations of the parallel kernels. Plain loops,
// same derived-stream draws and the same reduction order, so results must be
// bit-identical to the production versions at any thread count. Used by the
// identity tests and the benchmark.

#include "mssl/dbscan.hpp"
#include "mssl/eval.hpp"
#include "mssl/ransac.hpp"

namespace mssl::reference {

std::vector<OrientationPoint> map_to_orientation(const ItdSignal& itd,
                                                 const DbscanParams& params);

DbscanResult dbscan(std::span<const OrientationPoint> points, const DbscanParams& params);

FitRecord ransac_fit_once(const ItdSignal& itd, const RansacParams& params);

std::vector<EvalOutput> run_eval(const EvalConfig& config);

}  // namespace mssl::reference
