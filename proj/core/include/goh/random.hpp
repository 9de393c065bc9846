#pragma once

#include <cstdint>
#include <random>

#include "goh/rational.hpp"

namespace goh {

// Seeded generator with a fixed mapping from engine output to values, so
// sample streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }
  // k / den with k uniform in [-bound * den, bound * den].
  Rational rational(long bound, long den) {
    return make_rational(integer(-bound * den, bound * den), den);
  }
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace goh
