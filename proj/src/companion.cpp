#include "conerad/companion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conerad {

double companion_half_norm(NormKind kind, const Point& x) {
  switch (kind) {
    case NormKind::sup: {
      double m = 0.0;
      for (double v : x) m = std::max(m, v);
      return std::max(0.0, m);
    }
    case NormKind::sum: {
      double s = 0.0;
      for (double v : x)
        if (v > 0.0) s += v;
      return s;
    }
    case NormKind::euclid: {
      double s = 0.0;
      for (double v : x)
        if (v > 0.0) s += v * v;
      return std::sqrt(s);
    }
    case NormKind::bv: {
      double m = 0.0;
      for (double v : x) m = std::max(m, v);
      return std::max(0.0, m);
    }
  }
  return 0.0;
}

double companion_half_norm(const SpaceSpec& space, const Point& x) {
  require_dim(x, static_cast<std::size_t>(space.dim), "companion_half_norm");
  return companion_half_norm(space.kind, x);
}

double companion_norm(NormKind kind, const Point& x) {
  return std::max(companion_half_norm(kind, x),
                  companion_half_norm(kind, negated(x)));
}

double companion_norm(const SpaceSpec& space, const Point& x) {
  require_dim(x, static_cast<std::size_t>(space.dim), "companion_norm");
  return companion_norm(space.kind, x);
}

double u_norm(const Point& x, const Point& u) {
  require_same_dim(x, u, "u_norm");
  require(in_cone(u) && !is_zero(u), "u_norm: u must be a nonzero cone point");
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (u[j] > 0.0) {
      m = std::max(m, std::abs(x[j]) / u[j]);
    } else if (x[j] != 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  // Round up to the nearest float for which -mu <= x <= mu holds exactly;
  // the ratio rounding can undershoot by an ulp.
  for (bool ok = false; !ok;) {
    ok = true;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (std::abs(x[j]) > m * u[j]) ok = false;
    if (!ok) m = std::nextafter(m, std::numeric_limits<double>::infinity());
  }
  return m;
}

double lower_gauge(const Point& x, const Point& u) {
  require_same_dim(x, u, "lower_gauge");
  require(in_cone(x), "lower_gauge: x must lie in the cone");
  require(in_cone(u) && !is_zero(u),
          "lower_gauge: u must be a nonzero cone point");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j)
    if (u[j] > 0.0) m = std::min(m, x[j] / u[j]);
  // Round down to the nearest float with m*u <= x exactly.
  for (bool ok = false; !ok && m > 0.0;) {
    ok = true;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (m * u[j] > x[j]) ok = false;
    if (!ok) m = std::nextafter(m, 0.0);
  }
  return std::max(m, 0.0);
}

GaugeResult normal_point_gauge(const Point& x) {
  require(in_cone(x), "normal_point_gauge: x must lie in the cone");
  GaugeResult res;
  const std::size_t n = x.size();
  if (n == 0) return res;

  // Two-state DP over per-coordinate choices v_j in {0, x_j}. Partial sums
  // accumulate left to right exactly like bv_norm so the best value matches
  // exhaustive vertex enumeration bit for bit.
  double best0 = 0.0;          // v_1 = 0
  double best1 = std::abs(x[0]);  // v_1 = x_1
  std::vector<unsigned char> from0(n, 0), from1(n, 1);
  for (std::size_t j = 1; j < n; ++j) {
    const double stay0 = best0;             // 0 after 0
    const double drop = best1 + x[j - 1];   // 0 after x_{j-1}
    const double rise0 = best0 + x[j];      // x_j after 0
    const double stay1 = best1 + std::abs(x[j] - x[j - 1]);
    double n0, n1;
    if (drop >= stay0) {
      n0 = drop;
      from0[j] = 1;
    } else {
      n0 = stay0;
      from0[j] = 0;
    }
    if (rise0 >= stay1) {
      n1 = rise0;
      from1[j] = 0;
    } else {
      n1 = stay1;
      from1[j] = 1;
    }
    best0 = n0;
    best1 = n1;
  }

  res.witness.assign(n, 0.0);
  unsigned char state;
  if (best1 >= best0) {
    res.value = best1;
    state = 1;
  } else {
    res.value = best0;
    state = 0;
  }
  for (std::size_t j = n; j-- > 0;) {
    if (state == 1) res.witness[j] = x[j];
    state = (j > 0) ? (state == 1 ? from1[j] : from0[j]) : state;
  }
  return res;
}

namespace {

// Dual norm of a nonnegative functional f with respect to the primal norm:
//   sup:     ||f||_1          sum:  ||f||_inf
//   euclid:  ||f||_2          bv:   sum f_j   (tail sums of f are the exact
//                                   dual pairing coefficients; for f >= 0
//                                   the largest is the full sum)
double dual_norm_nonneg(NormKind kind, const Point& f) {
  switch (kind) {
    case NormKind::sup:
    case NormKind::bv: {
      double s = 0.0;
      for (double v : f) s += v;
      return s;
    }
    case NormKind::sum: {
      double m = 0.0;
      for (double v : f) m = std::max(m, v);
      return m;
    }
    case NormKind::euclid: {
      double s = 0.0;
      for (double v : f) s += v * v;
      return std::sqrt(s);
    }
  }
  return 0.0;
}

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exhaustive scan of the lattice {base + i*step : 0 <= i < counts} per axis,
// clamped to [lo_bound, hi_bound]. Returns the minimizing value of
// eval(point) together with the minimizer, resolving ties toward the
// lexicographically first index so that serial and parallel scans agree.
template <typename Eval>
std::pair<double, Point> grid_min(const Point& base, double step,
                                  const std::vector<int>& counts,
                                  double lo_bound, double hi_bound, Exec exec,
                                  Eval eval) {
  const std::size_t n = base.size();
  long total = 1;
  for (int c : counts) total *= c;

  auto point_at = [&](long idx) {
    Point z(n);
    long rest = idx;
    for (std::size_t d = 0; d < n; ++d) {
      const int i = static_cast<int>(rest % counts[d]);
      rest /= counts[d];
      z[d] = std::clamp(base[d] + step * i, lo_bound, hi_bound);
    }
    return z;
  };

  double best = std::numeric_limits<double>::infinity();
  long best_idx = -1;

  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      double my_best = std::numeric_limits<double>::infinity();
      long my_idx = -1;
#pragma omp for nowait
      for (long idx = 0; idx < total; ++idx) {
        const double v = eval(point_at(idx));
        if (v < my_best || (v == my_best && idx < my_idx)) {
          my_best = v;
          my_idx = idx;
        }
      }
#pragma omp critical
      {
        if (my_best < best || (my_best == best && my_idx < best_idx)) {
          best = my_best;
          best_idx = my_idx;
        }
      }
    }
  } else {
    for (long idx = 0; idx < total; ++idx) {
      const double v = eval(point_at(idx));
      if (v < best) {
        best = v;
        best_idx = idx;
      }
    }
  }
  return {best, point_at(best_idx)};
}

}  // namespace

OracleBracket half_norm_oracle(const SpaceSpec& space, const Point& x,
                               double grid_step, double radius, Exec exec) {
  require_dim(x, static_cast<std::size_t>(space.dim), "half_norm_oracle");
  require(space.dim >= 1 && space.dim <= 4,
          "half_norm_oracle: exponential grid, dim must be <= 4");
  require(grid_step > 0.0 && radius > 0.0,
          "half_norm_oracle: grid_step and radius must be positive");
  const std::size_t n = x.size();
  const NormKind kind = space.kind;

  const int per_axis = static_cast<int>(std::floor(radius / grid_step)) + 1;
  double count = 1;
  for (std::size_t d = 0; d < n; ++d) count *= per_axis;
  require(count <= 8.0e6, "half_norm_oracle: grid too fine for this dim");

  // Primal side: min ||x + z|| over grid points z of [0, radius]^n, then two
  // local refinements around the incumbent. Every candidate is a feasible
  // shift, so the running min stays an upper bound for psi.
  auto primal_eval = [&](const Point& z) { return norm(kind, add(x, z)); };
  std::vector<int> counts(n, per_axis);
  auto [up, zbest] =
      grid_min(Point(n, 0.0), grid_step, counts, 0.0, radius, exec, primal_eval);
  double step = grid_step;
  for (int pass = 0; pass < 2; ++pass) {
    const double fine = step / 10.0;
    Point base(n);
    for (std::size_t d = 0; d < n; ++d)
      base[d] = std::clamp(zbest[d] - step, 0.0, radius);
    std::vector<int> fine_counts(n, 21);
    auto [val, z] = grid_min(base, fine, fine_counts, 0.0, radius, exec,
                             primal_eval);
    if (val < up) {
      up = val;
      zbest = z;
    }
    step = fine;
  }

  // Dual side: max <f, x> over nonnegative functionals scaled to dual norm
  // exactly one (plus f = 0), again with local refinement. Each candidate is
  // dual feasible, so the running max stays a lower bound for psi.
  auto dual_eval = [&](const Point& g) {
    const double dn = dual_norm_nonneg(kind, g);
    if (dn <= 0.0) return 0.0;
    return -dot(scaled(g, 1.0 / dn), x);  // negated: reuse the min scanner
  };
  const int dual_axis = 9;
  const double dual_step = 1.0 / (dual_axis - 1);
  std::vector<int> dual_counts(n, dual_axis);
  auto [neg_lo, gbest] =
      grid_min(Point(n, 0.0), dual_step, dual_counts, 0.0, 1.0, exec, dual_eval);
  double dstep = dual_step;
  for (int pass = 0; pass < 2; ++pass) {
    const double fine = dstep / 10.0;
    Point base(n);
    for (std::size_t d = 0; d < n; ++d)
      base[d] = std::clamp(gbest[d] - dstep, 0.0, 1.0);
    std::vector<int> fine_counts(n, 21);
    auto [val, g] = grid_min(base, fine, fine_counts, 0.0, 1.0, exec, dual_eval);
    if (val < neg_lo) {
      neg_lo = val;
      gbest = g;
    }
    dstep = fine;
  }

  OracleBracket res;
  res.upper = up;
  res.lower = std::max(0.0, -neg_lo);
  return res;
}

}  // namespace conerad
