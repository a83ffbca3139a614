#pragma once

#include <cmath>
#include <cstdint>

namespace freshopt {

/// SplitMix64 (Steele/Lea/Flood; public-domain reference constants). Chosen
/// because substreams are cheap to derive: mixing (seed, stream index)
/// through the finalizer gives independent starting states, so per-cycle
/// streams reproduce bit-exactly regardless of thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Substream for (seed, index): both words are avalanched before mixing
  /// so nearby indices land in unrelated regions of the state space.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t a = mix(seed + 0x9E3779B97F4A7C15ULL);
    const std::uint64_t b = mix(index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL);
    return SplitMix64(a ^ b);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Poisson draw by inverse-transform search; exact and consumes one uniform
/// per chunk. Means above 500 are split using Poisson additivity to keep
/// exp(-mean) away from underflow.
inline std::uint64_t poisson_draw(double mean, SplitMix64& rng) {
  std::uint64_t total = 0;
  while (mean > 500.0) {
    double p = 7.1245764067412855e-218;  // exp(-500)
    double cum = p;
    std::uint64_t k = 0;
    const double u = rng.next_double();
    while (u > cum && k < 10000) {
      ++k;
      p *= 500.0 / static_cast<double>(k);
      cum += p;
    }
    total += k;
    mean -= 500.0;
  }
  if (mean <= 0.0) return total;
  double p = std::exp(-mean);
  double cum = p;
  std::uint64_t k = 0;
  const double u = rng.next_double();
  // Cap guards the (sub-1e-12 probability) event that rounding keeps the
  // partial sums just below u forever.
  const std::uint64_t cap = static_cast<std::uint64_t>(10.0 * mean) + 100;
  while (u > cum && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return total + k;
}

}  // namespace freshopt
