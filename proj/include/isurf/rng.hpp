#pragma once

#include <cstdint>

#include "isurf/gaussian.hpp"
#include "isurf/rational.hpp"

namespace isurf {

// splitmix64: tiny deterministic generator, identical across platforms.
// All randomized suites derive their streams from a caller-supplied seed so
// reports are reproducible byte for byte.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }

  // Integer in [-h, h].
  long int_in(long h) { return static_cast<long>(below(2 * h + 1)) - h; }

  // Rational with numerator in [-h, h] and denominator in [1, h].
  Rat rat_height(long h) { return rat(int_in(h), static_cast<long>(below(h)) + 1); }

  Rat nonzero_rat_height(long h) {
    for (;;) {
      Rat q = rat_height(h);
      if (!is_zero(q)) return q;
    }
  }

  GaussRat gauss_height(long h) { return {rat_height(h), rat_height(h)}; }

  double unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

inline constexpr uint64_t kDefaultSeed = 0xC0FFEEULL;

}  // namespace isurf
