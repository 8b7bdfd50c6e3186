#include "mssl/types.hpp"

#include <string>

namespace mssl {

void validate(const SourceSpec& source) {
  if (!(source.azimuth_deg > -180.0 && source.azimuth_deg <= 180.0))
    throw InvalidParam("azimuth_deg must be in (-180, 180], got " + std::to_string(source.azimuth_deg));
  if (!(source.elevation_deg >= 0.0 && source.elevation_deg <= 90.0))
    throw InvalidParam("elevation_deg must be in [0, 90], got " + std::to_string(source.elevation_deg));
  if (!(source.distance_m > 0.0))
    throw InvalidParam("distance_m must be positive");
  if (!(source.duty > 0.0 && source.duty <= 1.0))
    throw InvalidParam("duty must be in (0, 1]");
}

void validate(const ArrayConfig& array) {
  if (!(array.half_baseline_m > 0.0))
    throw InvalidParam("half_baseline_m must be positive");
  if (array.omega_rad_s == 0.0 || !std::isfinite(array.omega_rad_s))
    throw InvalidParam("omega_rad_s must be nonzero and finite");
  if (array.samples_per_rotation < 4)
    throw InvalidParam("samples_per_rotation must be at least 4");
  if (!(array.sound_speed_m_s > 0.0))
    throw InvalidParam("sound_speed_m_s must be positive");
}

bool ItdSignal::covers_full_rotation() const {
  if (samples.size() < 2) return false;
  const double span = samples.back().t_s - samples.front().t_s;
  const double need = array.rotation_period_s() * (1.0 - 1.0 / array.samples_per_rotation);
  return span >= need - 1e-9;
}

void validate(const ItdSignal& itd) {
  validate(itd.array);
  for (std::size_t i = 1; i < itd.samples.size(); ++i) {
    if (!(itd.samples[i].t_s > itd.samples[i - 1].t_s))
      throw InvalidParam("ITD sample times must be strictly increasing");
  }
}

}  // namespace mssl
