#pragma once

#include <cstdint>

#include "twinmul/errors.hpp"

namespace twinmul {

// Deterministic 64-bit generator with the SplitMix64 state transition
// (increment 0x9E3779B97F4A7C15, mix constants 0xBF58476D1CE4E5B9 and
// 0x94D049BB133111EB). Bounded draws use rejection sampling and doubles use
// the 53-bit mantissa construction so that every seed reproduces the same
// stream on every platform; the standard <random> distributions are
// implementation-defined and would not.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw index_error("SplitMix64::below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [lo, hi] (inclusive).
  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw index_error("SplitMix64::int_in: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
  }

  // Uniform in [0, 1) with 53 significant bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace twinmul
