#pragma once

#include <cmath>
#include <cstdint>

namespace hullbound {

// SplitMix64 (Steele/Lea/Flood). Used everywhere a seeded stream is needed so
// that results are bit-exact across platforms and standard libraries.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in (0, 1]; never returns zero.
  double next_positive_double() { return 1.0 - next_double(); }

  // Uniform integer in [0, n). Modulo bias is below n / 2^64 and irrelevant
  // for the index ranges used here.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Standard exponential by inverse CDF.
  double next_exponential() { return -std::log(next_positive_double()); }

private:
  std::uint64_t state_;
};

// Decorrelated per-stream seed derived from a base seed and a stream index.
// Fully determines the stream regardless of scheduling.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  return g.next_u64();
}

}  // namespace hullbound
