#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "conerad/point.hpp"

namespace conerad {

/// Deterministic random source. Doubles are derived from the raw 64-bit
/// stream directly so results do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] by rejection-free modulo (bias negligible
  /// for the small ranges used here, and determinism is what matters).
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  /// Strictly positive exponential variate.
  double exponential() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
  }

  /// Uniform point of the probability simplex (flat Dirichlet).
  Point dirichlet(std::size_t n) {
    Point x(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = exponential();
      s += x[i];
    }
    for (double& v : x) v /= s;
    return x;
  }

  Point cone_point(std::size_t n, double lo = 0.0, double hi = 1.0) {
    Point x(n);
    for (double& v : x) v = uniform(lo, hi);
    return x;
  }

  Point signed_point(std::size_t n, double amp = 1.0) {
    Point x(n);
    for (double& v : x) v = uniform(-amp, amp);
    return x;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace conerad
