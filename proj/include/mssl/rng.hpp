#pragma once
// Self-contained RNG so results reproduce bit-for-bit across platforms and
// thread counts. Parallel loops give every iteration its own derived stream;
// the aggregate output is then independent of scheduling.

#include <bit>
#include <cmath>
#include <cstdint>

namespace mssl {

inline constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

/// One splitmix64 step: advances `state`, returns the mixed output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kGolden64;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic substream seed for (base, index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base + kGolden64 * (index + 1);
  return splitmix64_next(s);
}

/// xoshiro256** seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    for (auto& w : state_) w = splitmix64_next(seed);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden64;
  }

  /// Independent stream `index` rooted at `base`.
  static Rng stream(std::uint64_t base, std::uint64_t index) {
    return Rng(derive_seed(base, index));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t m = n - 1;
    if (m == 0) return 0;
    const std::uint64_t mask = ~0ULL >> std::countl_zero(m);
    for (;;) {
      const std::uint64_t v = next_u64() & mask;
      if (v < n) return v;
    }
  }

  /// Standard normal via Box-Muller. No spare caching: exactly two uniform
  /// draws per call keeps the stream position predictable.
  double next_gaussian() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log() finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi_ * u2);
  }

 private:
  static constexpr double kPi_ = 3.141592653589793238462643383279502884;
  std::uint64_t state_[4];
};

}  // namespace mssl
