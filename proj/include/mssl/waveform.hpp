#pragma once
// Waveform-level pathway: synthesize the two microphone channels for delayed
// sources and estimate the ITD per frame by cross-correlation. Validates the
// geometric shortcut used by the ITD-domain scene synthesis.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mssl/scene.hpp"
#include "mssl/types.hpp"

namespace mssl {

struct Waveform {
  std::vector<double> samples;
  double fs_hz = 44100.0;

  double duration_s() const { return static_cast<double>(samples.size()) / fs_hz; }
};
void validate(const Waveform& w);

Waveform white_noise(int n, double fs_hz, std::uint64_t seed);
/// Equal-amplitude tones at freqs_hz with seeded random phases.
Waveform multi_tone(int n, double fs_hz, std::span<const double> freqs_hz,
                    std::uint64_t seed);
/// White noise through a windowed-sinc lowpass at cutoff_hz.
Waveform bandlimited_noise(int n, double fs_hz, double cutoff_hz, std::uint64_t seed);

inline constexpr int kFractionalDelayTaps = 31;

/// Mic pair for one delayed source:
///   y1 = src(t) + n1,   y2 = delta * src(t + delay) + n2.
/// Positive delay means the sound reaches mic 2 earlier; estimate_itd on the
/// pair then returns +delay * c0. Fractional delays use windowed-sinc
/// interpolation (kFractionalDelayTaps taps); the source is taken as zero
/// outside its extent. Throws DelayOutOfRange when |delay| exceeds the
/// signal duration.
std::pair<Waveform, Waveform> synth_mic_pair(const Waveform& src, double delay_s,
                                             double delta, double noise_sigma,
                                             std::uint64_t seed);

struct CorrelationResult {
  std::vector<int> lags;       // in samples, -K..K
  std::vector<double> values;  // unbiased estimate per lag
  double peak_lag_s = 0.0;     // parabolic-refined argmax
};

/// Unbiased cross-correlation R(k) = mean over the overlap of y1[t] y2[t-k],
/// k in [-K, K] with K = round(max_lag_s * fs). A peak at +k means y2 runs
/// ahead: y2[u] ~ y1[u + k]. The peak position is refined with a 3-point
/// parabolic fit (clamped to half a sample). Throws MismatchedRates on
/// differing sample rates and FrameTooShort when the lag range leaves no
/// overlap.
CorrelationResult cross_correlate(const Waveform& y1, const Waveform& y2,
                                  double max_lag_s);

/// Peak lag converted to a path-length difference, with the lag search capped
/// at 1.25 * (2b / c0).
double estimate_itd(const Waveform& y1, const Waveform& y2, const ArrayConfig& array);

/// Frame-by-frame ITD track across a rotation: at each of the
/// rotations * samples_per_rotation steps, the duty-gated active sources are
/// mixed into both channels with their geometry-derived delays (sources cycle
/// through their waveforms), optional per-mic noise is added, and the frame
/// pair is cross-correlated. Frames with no content yield d = 0. Throws
/// FrameTooShort when frame_len cannot cover twice the maximum lag.
ItdSignal rotational_itd_track(const Scene& scene, const ArrayConfig& array,
                               std::span<const Waveform> source_waveforms,
                               int frame_len, const SimParams& params,
                               double mic_noise_sigma = 0.0);

}  // namespace mssl
