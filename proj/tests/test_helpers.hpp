#pragma once

#include <cmath>

#include "conerad/matrix.hpp"
#include "conerad/point.hpp"
#include "conerad/rng.hpp"
#include "conerad/space.hpp"

namespace conerad::testing {

/// Exhaustive vertex enumeration for the normal-point gauge, the
/// independent oracle the DP is checked against (n <= 15).
inline double gauge_by_enumeration(const Point& x, Point* witness = nullptr) {
  const std::size_t n = x.size();
  double best = -1.0;
  Point bw;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Point v(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (1ull << j)) v[j] = x[j];
    const double val = bv_norm(v);
    if (val > best) {
      best = val;
      bw = v;
    }
  }
  if (witness) *witness = bw;
  return best;
}

/// Independent Perron-root oracle: long plain power iteration on the raw
/// matrix (and its transpose as a cross-check), no shared code with the
/// estimators under test.
inline double perron_root_oracle(const Matrix& a, int iters = 2000) {
  auto run = [&](const Matrix& m) {
    Point v(m.dim(), 1.0);
    double rho = 0.0;
    for (int it = 0; it < iters; ++it) {
      Point w = m.apply(v);
      double s = 0.0;
      for (double c : w) s += std::abs(c);
      if (s == 0.0) return 0.0;
      rho = s;
      for (double& c : w) c /= s;
      v = std::move(w);
    }
    return rho;
  };
  return 0.5 * (run(a) + run(a.transpose()));
}

inline Matrix random_positive_matrix(Rng& rng, std::size_t n, double lo,
                                     double hi) {
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(lo, hi);
  return a;
}

/// Truncation of the alternating 0/1 sequence with m ones, one trailing
/// zero kept so the final drop is counted.
inline Point alternating_truncation(int m) {
  Point x(2 * m + 1, 0.0);
  for (int i = 1; i <= 2 * m; i += 2) x[i] = 1.0;
  return x;
}

/// Truncation of the m-block of ones, one trailing zero kept.
inline Point block_truncation(int m) {
  Point u(2 * m + 1, 0.0);
  for (int i = 0; i < 2 * m; ++i) u[i] = 1.0;
  return u;
}

}  // namespace conerad::testing
