#include "mssl/waveform.hpp"

#include <algorithm>
#include <cmath>

#include "mssl/model.hpp"
#include "mssl/rng.hpp"

namespace mssl {

void validate(const Waveform& w) {
  if (!(w.fs_hz > 0.0)) throw InvalidParam("fs_hz must be positive");
}

namespace {

constexpr int kHalfTaps = kFractionalDelayTaps / 2;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

// Blackman window over [-kHalfTaps - 0.5, kHalfTaps + 0.5]; 1 at the center,
// 0 outside.
double blackman(double u) {
  const double half = kHalfTaps + 0.5;
  if (std::fabs(u) >= half) return 0.0;
  const double x = u / half;
  return 0.42 + 0.5 * std::cos(kPi * x) + 0.08 * std::cos(2.0 * kPi * x);
}

// Interpolation kernel for a constant fractional offset frac in [0, 1):
// kern[k + kHalfTaps] multiplies src[i0 + k]. Exactly a unit impulse when
// frac == 0, so integer delays reproduce samples untouched; the windowed
// sinc evaluated at integers would leave ~1e-17 tap residue instead.
void delay_kernel(double frac, double* kern) {
  if (frac == 0.0) {
    std::fill(kern, kern + kFractionalDelayTaps, 0.0);
    kern[kHalfTaps] = 1.0;
    return;
  }
  for (int k = -kHalfTaps; k <= kHalfTaps; ++k) {
    const double u = frac - k;
    kern[k + kHalfTaps] = sinc(u) * blackman(u);
  }
}

long mod_index(long x, long n) {
  long m = x % n;
  return m < 0 ? m + n : m;
}

}  // namespace

Waveform white_noise(int n, double fs_hz, std::uint64_t seed) {
  if (n < 1) throw InvalidParam("sample count must be at least 1");
  if (!(fs_hz > 0.0)) throw InvalidParam("fs_hz must be positive");
  Waveform w;
  w.fs_hz = fs_hz;
  w.samples.resize(n);
  Rng rng(seed);
  for (auto& s : w.samples) s = rng.next_gaussian();
  return w;
}

Waveform multi_tone(int n, double fs_hz, std::span<const double> freqs_hz,
                    std::uint64_t seed) {
  if (n < 1) throw InvalidParam("sample count must be at least 1");
  if (!(fs_hz > 0.0)) throw InvalidParam("fs_hz must be positive");
  if (freqs_hz.empty()) throw InvalidParam("multi_tone needs at least one frequency");
  for (double f : freqs_hz) {
    if (!(f > 0.0 && f < fs_hz / 2.0))
      throw InvalidParam("tone frequencies must lie in (0, fs/2)");
  }
  Rng rng(seed);
  std::vector<double> phase(freqs_hz.size());
  for (auto& p : phase) p = rng.next_double() * 2.0 * kPi;

  Waveform w;
  w.fs_hz = fs_hz;
  w.samples.assign(n, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(freqs_hz.size()));
  for (std::size_t f = 0; f < freqs_hz.size(); ++f) {
    const double step = 2.0 * kPi * freqs_hz[f] / fs_hz;
    for (int i = 0; i < n; ++i) w.samples[i] += amp * std::sin(step * i + phase[f]);
  }
  return w;
}

Waveform bandlimited_noise(int n, double fs_hz, double cutoff_hz, std::uint64_t seed) {
  if (!(cutoff_hz > 0.0 && cutoff_hz < fs_hz / 2.0))
    throw InvalidParam("cutoff_hz must lie in (0, fs/2)");
  Waveform noise = white_noise(n, fs_hz, seed);

  // 63-tap Blackman-windowed sinc lowpass, normalized to unit DC gain.
  constexpr int kLpTaps = 63;
  constexpr int kLpHalf = kLpTaps / 2;
  const double fc = cutoff_hz / fs_hz;
  double h[kLpTaps];
  double sum = 0.0;
  for (int k = -kLpHalf; k <= kLpHalf; ++k) {
    const double x = static_cast<double>(k) / (kLpHalf + 0.5);
    const double w = 0.42 + 0.5 * std::cos(kPi * x) + 0.08 * std::cos(2.0 * kPi * x);
    h[k + kLpHalf] = 2.0 * fc * sinc(2.0 * fc * k) * w;
    sum += h[k + kLpHalf];
  }
  for (double& v : h) v /= sum;

  Waveform out;
  out.fs_hz = fs_hz;
  out.samples.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = -kLpHalf; k <= kLpHalf; ++k) {
      const int m = i + k;
      if (m >= 0 && m < n) acc += noise.samples[m] * h[k + kLpHalf];
    }
    out.samples[i] = acc;
  }
  return out;
}

std::pair<Waveform, Waveform> synth_mic_pair(const Waveform& src, double delay_s,
                                             double delta, double noise_sigma,
                                             std::uint64_t seed) {
  validate(src);
  if (src.samples.empty()) throw InvalidParam("source waveform is empty");
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidParam("delta must be in (0, 1]");
  if (!(noise_sigma >= 0.0)) throw InvalidParam("noise_sigma must be non-negative");
  if (std::fabs(delay_s) >= src.duration_s())
    throw DelayOutOfRange("|delay| must be smaller than the signal duration");

  const long n = static_cast<long>(src.samples.size());
  Waveform y1 = src;
  Waveform y2;
  y2.fs_hz = src.fs_hz;
  y2.samples.resize(n);

  // y2[i] = delta * src(i + D): one kernel for the constant fractional part.
  const double d_samples = delay_s * src.fs_hz;
  const long shift = static_cast<long>(std::floor(d_samples));
  const double frac = d_samples - static_cast<double>(shift);
  double kern[kFractionalDelayTaps];
  delay_kernel(frac, kern);

  for (long i = 0; i < n; ++i) {
    const long base = i + shift;
    double acc = 0.0;
    for (int k = -kHalfTaps; k <= kHalfTaps; ++k) {
      const long m = base + k;
      if (m >= 0 && m < n) acc += src.samples[m] * kern[k + kHalfTaps];
    }
    y2.samples[i] = delta * acc;
  }

  if (noise_sigma > 0.0) {
    Rng r1 = Rng::stream(seed, 0);
    Rng r2 = Rng::stream(seed, 1);
    for (long i = 0; i < n; ++i) y1.samples[i] += noise_sigma * r1.next_gaussian();
    for (long i = 0; i < n; ++i) y2.samples[i] += noise_sigma * r2.next_gaussian();
  }
  return {std::move(y1), std::move(y2)};
}

CorrelationResult cross_correlate(const Waveform& y1, const Waveform& y2,
                                  double max_lag_s) {
  validate(y1);
  validate(y2);
  if (y1.fs_hz != y2.fs_hz) throw MismatchedRates("sample rates differ");
  const double fs = y1.fs_hz;
  if (!(max_lag_s * fs >= 1.0))
    throw InvalidParam("max_lag_s must cover at least one sample period");
  const long n1 = static_cast<long>(y1.samples.size());
  const long n2 = static_cast<long>(y2.samples.size());
  const long k_max = std::lround(max_lag_s * fs);
  if (k_max >= n1 || k_max >= n2)
    throw FrameTooShort("frames shorter than the requested lag range");

  CorrelationResult res;
  res.lags.reserve(2 * k_max + 1);
  res.values.reserve(2 * k_max + 1);
  for (long k = -k_max; k <= k_max; ++k) {
    const long lo = std::max(0L, k);
    const long hi = std::min(n1, n2 + k);  // exclusive
    double sum = 0.0;
    for (long t = lo; t < hi; ++t) sum += y1.samples[t] * y2.samples[t - k];
    res.lags.push_back(static_cast<int>(k));
    res.values.push_back(sum / static_cast<double>(hi - lo));
  }

  std::size_t peak = 0;
  for (std::size_t i = 1; i < res.values.size(); ++i) {
    if (res.values[i] > res.values[peak]) peak = i;
  }
  double offset = 0.0;
  if (peak > 0 && peak + 1 < res.values.size()) {
    const double a = res.values[peak - 1];
    const double b = res.values[peak];
    const double c = res.values[peak + 1];
    const double den = a - 2.0 * b + c;
    if (std::fabs(den) > 1e-300) offset = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
  }
  res.peak_lag_s = (static_cast<double>(res.lags[peak]) + offset) / fs;
  return res;
}

double estimate_itd(const Waveform& y1, const Waveform& y2, const ArrayConfig& array) {
  validate(array);
  const double physical = 1.25 * array.max_itd_m() / array.sound_speed_m_s;
  const double max_lag_s = std::max(physical, 1.0 / y1.fs_hz);
  return cross_correlate(y1, y2, max_lag_s).peak_lag_s * array.sound_speed_m_s;
}

ItdSignal rotational_itd_track(const Scene& scene, const ArrayConfig& array,
                               std::span<const Waveform> source_waveforms,
                               int frame_len, const SimParams& params,
                               double mic_noise_sigma) {
  if (scene.sources.empty()) throw EmptyScene("scene has no sources");
  validate(array);
  validate(params);
  for (const auto& s : scene.sources) validate(s);
  if (source_waveforms.size() != scene.sources.size())
    throw InvalidParam("need exactly one waveform per source");
  for (const auto& w : source_waveforms) {
    validate(w);
    if (w.samples.empty()) throw InvalidParam("source waveform is empty");
  }
  const double fs = source_waveforms[0].fs_hz;
  for (const auto& w : source_waveforms) {
    if (w.fs_hz != fs) throw MismatchedRates("source waveforms must share one sample rate");
  }
  if (!(mic_noise_sigma >= 0.0)) throw InvalidParam("mic_noise_sigma must be non-negative");

  const int max_lag_samples =
      static_cast<int>(std::ceil(1.25 * array.max_itd_m() / array.sound_speed_m_s * fs));
  if (frame_len < 2 * std::max(max_lag_samples, 1))
    throw FrameTooShort("frame_len must cover at least twice the maximum lag");

  const int steps = params.rotations * array.samples_per_rotation;
  const double dt = array.sample_step_s();
  const int n_src = static_cast<int>(scene.sources.size());

  ItdSignal out;
  out.array = array;
  out.samples.reserve(steps);

  Waveform m1, m2;
  m1.fs_hz = fs;
  m2.fs_hz = fs;
  std::vector<double> ext(frame_len + kFractionalDelayTaps - 1);
  double kern[kFractionalDelayTaps];

  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(i));

    m1.samples.assign(frame_len, 0.0);
    m2.samples.assign(frame_len, 0.0);
    for (int k = 0; k < n_src; ++k) {
      const bool on = rng.next_double() < scene.sources[k].duty;
      if (!on) continue;

      const auto& wf = source_waveforms[k].samples;
      const long len = static_cast<long>(wf.size());
      const long base = mod_index(static_cast<long>(i) * frame_len, len);

      // Mic 1 hears the source as-is; mic 2 hears it advanced by the
      // geometric delay. Source material cycles.
      for (int j = 0; j < frame_len; ++j)
        m1.samples[j] += wf[mod_index(base + j, len)];

      const double d_samples = itd_model(scene.sources[k], array, t) /
                               array.sound_speed_m_s * fs;
      const long shift = static_cast<long>(std::floor(d_samples));
      const double frac = d_samples - static_cast<double>(shift);
      delay_kernel(frac, kern);
      for (std::size_t q = 0; q < ext.size(); ++q)
        ext[q] = wf[mod_index(base + shift - kHalfTaps + static_cast<long>(q), len)];
      for (int j = 0; j < frame_len; ++j) {
        double acc = 0.0;
        for (int k2 = 0; k2 < kFractionalDelayTaps; ++k2) acc += ext[j + k2] * kern[k2];
        m2.samples[j] += acc;
      }
    }

    if (mic_noise_sigma > 0.0) {
      for (auto& v : m1.samples) v += mic_noise_sigma * rng.next_gaussian();
      for (auto& v : m2.samples) v += mic_noise_sigma * rng.next_gaussian();
    }

    double e1 = 0.0, e2 = 0.0;
    for (double v : m1.samples) e1 += std::fabs(v);
    for (double v : m2.samples) e2 += std::fabs(v);

    double d = 0.0;
    if (e1 > 0.0 && e2 > 0.0) d = estimate_itd(m1, m2, array);
    out.samples.push_back({t, d});
  }
  return out;
}

}  // namespace mssl
