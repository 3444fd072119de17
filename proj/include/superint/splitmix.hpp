#pragma once

// SplitMix64 with a counter-based contract: draw k of stream (seed) is
// mix(seed + (k+1) * 0x9E3779B97F4A7C15). Child streams are derived by
// mixing the parent seed with a stream id, so any language can reproduce the
// same numbers from (seed, stream path, draw index).

#include <cstdint>

#include "superint/rational.hpp"

namespace superint {

class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return mix(seed_ + (++counter_) * kGamma); }

  /// Independent stream for sub-task `id`.
  SplitMix64 split(std::uint64_t id) const { return SplitMix64(mix(seed_ ^ mix(id + kGamma))); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }
  /// Rational num/den with den in [1, max_den] and value in [lo, hi].
  Rational rational(long lo, long hi, long max_den) {
    long den = integer(1, max_den);
    long num = integer(lo * den, hi * den);
    return Rational(num, den);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace superint
