#include "conerad/opnorm.hpp"

#include <algorithm>
#include <cmath>

#include "conerad/rng.hpp"

namespace conerad {

namespace {


double max_col_sum(const Matrix& a, std::size_t* arg = nullptr) {
  double best = 0.0;
  std::size_t bj = 0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a(i, j);
    if (s > best) {
      best = s;
      bj = j;
    }
  }
  if (arg) *arg = bj;
  return best;
}

// Largest singular value via symmetric power iteration on A^T A. The final
// value is ||A v|| at the returned unit vector, so the witness reproduces
// the value exactly.
double sigma_max(const Matrix& a, Point* witness) {
  const std::size_t n = a.dim();
  const Matrix g = a.transpose().multiply(a);
  Point v(n, 1.0);
  double nv = norm(NormKind::euclid, v);
  if (nv == 0.0) return 0.0;
  for (double& c : v) c /= nv;
  double prev = -1.0;
  for (int it = 0; it < 500; ++it) {
    Point w = g.apply(v);
    const double nw = norm(NormKind::euclid, w);
    if (nw == 0.0) {
      if (witness) *witness = v;
      return 0.0;
    }
    for (double& c : w) c /= nw;
    const double ray = std::sqrt(nw);
    v = std::move(w);
    if (prev >= 0.0 && std::abs(ray - prev) <= 1e-15 * std::max(1.0, ray) &&
        it > 8)
      break;
    prev = ray;
  }
  if (witness) *witness = v;
  return norm(NormKind::euclid, a.apply(v));
}

// Vertices of {x >= 0, ||x||_bv <= 1} are the scaled block indicators
// 1_{[a,b]} / c_ab with c_ab = 1 + (b < n). ||Ax||_bv is convex, so the
// exact cone norm is the maximum over these finitely many points.
double bv_linear_norm(const Matrix& m, Point* witness) {
  const std::size_t n = m.dim();
  double best = 0.0;
  Point bw(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    Point block(n, 0.0);
    for (std::size_t b = a; b < n; ++b) {
      block[b] = 1.0;
      const double c = (b + 1 < n) ? 2.0 : 1.0;
      Point x = scaled(block, 1.0 / c);
      const double v = bv_norm(m.apply(x));
      if (v > best) {
        best = v;
        bw = x;
      }
    }
  }
  if (witness) *witness = bw;
  return best;
}

}  // namespace

double linear_cone_norm(const Matrix& a, NormKind kind, Point* witness) {
  const std::size_t n = a.dim();
  switch (kind) {
    case NormKind::sup: {
      if (witness) *witness = ones(n);
      return norm(NormKind::sup, a.apply(ones(n)));
    }
    case NormKind::sum: {
      std::size_t j = 0;
      const double v = max_col_sum(a, &j);
      if (witness) *witness = unit_vector(n, j);
      return v;
    }
    case NormKind::euclid:
      return sigma_max(a, witness);
    case NormKind::bv:
      return bv_linear_norm(a, witness);
  }
  return 0.0;
}

OpNormResult cone_operator_norm(const MapExpr& map, const SpaceSpec& space,
                                int samples, std::uint64_t seed) {
  require(space.dim == map.dim(), "cone_operator_norm: dimension mismatch");
  const std::size_t n = static_cast<std::size_t>(space.dim);
  OpNormResult res;

  if (space.kind == NormKind::sup) {
    res.witness = ones(n);
    res.value = norm(NormKind::sup, map.eval(res.witness));
    res.certified = true;
    return res;
  }
  if (map.is_positively_linear()) {
    res.value = linear_cone_norm(map.materialize_linear(), space.kind,
                                 &res.witness);
    res.certified = true;
    return res;
  }

  // Sampled lower bound. Probes mirror the hand estimates used for rank
  // models: coordinate vectors, 0/1 indicators, and Dirichlet samples, each
  // normalized to the unit sphere, followed by coordinatewise hill climbs.
  auto quotient = [&](const Point& x) {
    const double nx = norm(space.kind, x);
    if (nx <= 0.0) return 0.0;
    return norm(space.kind, map.eval(scaled(x, 1.0 / nx)));
  };

  std::vector<Point> probes;
  for (std::size_t j = 0; j < n; ++j) probes.push_back(unit_vector(n, j));
  if (n <= 12) {
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
      Point x(n, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (1ull << j)) x[j] = 1.0;
      probes.push_back(std::move(x));
    }
  } else {
    for (std::size_t m = 1; m <= n; ++m)
      probes.push_back(prefix_indicator(n, m));
    probes.push_back(ones(n));
  }
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) probes.push_back(rng.dirichlet(n));

  double best = 0.0;
  Point bw = probes.front();
  for (const Point& x : probes) {
    const double v = quotient(x);
    if (v > best) {
      best = v;
      bw = x;
    }
  }

  // Local refinement around the incumbent.
  double step = 0.25;
  for (int pass = 0; pass < 40; ++pass) {
    bool improved = false;
    for (std::size_t j = 0; j < n; ++j) {
      for (double dir : {+1.0, -1.0}) {
        Point x = bw;
        x[j] = std::max(0.0, x[j] + dir * step);
        const double v = quotient(x);
        if (v > best) {
          best = v;
          bw = x;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }

  const double nb = norm(space.kind, bw);
  res.value = best;
  res.certified = false;
  res.witness = nb > 0.0 ? scaled(bw, 1.0 / nb) : bw;
  return res;
}

HomCheckReport check_homogeneous_order_preserving(const HomMap& map,
                                                  int trials,
                                                  std::uint64_t seed) {
  require(trials >= 1, "check_homogeneous_order_preserving: trials");
  const std::size_t n = static_cast<std::size_t>(map.dim);
  Rng rng(seed);
  HomCheckReport rep;
  const double tol = 1e-9;

  for (int t = 0; t < trials && rep.homogeneous; ++t) {
    Point x = rng.cone_point(n, 0.0, 2.0);
    const double alpha = rng.uniform(0.0, 3.0);
    const Point lhs = map(scaled(x, alpha));
    const Point rhs = scaled(map(x), alpha);
    double scale = std::max(1.0, norm(NormKind::sup, rhs));
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(lhs[j] - rhs[j]) > tol * scale) {
        rep.homogeneous = false;
        rep.counterexample = {x, scaled(x, alpha)};
        break;
      }
    }
  }
  for (int t = 0; t < trials && rep.order_preserving; ++t) {
    Point x = rng.cone_point(n, 0.0, 2.0);
    Point y = x;
    for (std::size_t j = 0; j < n; ++j) y[j] += rng.uniform(0.0, 1.0);
    const Point bx = map(x);
    const Point by = map(y);
    double scale = std::max(1.0, norm(NormKind::sup, by));
    for (std::size_t j = 0; j < n; ++j) {
      if (bx[j] - by[j] > tol * scale) {
        rep.order_preserving = false;
        rep.counterexample = {x, y};
        break;
      }
    }
  }
  return rep;
}

HomCheckReport check_homogeneous_order_preserving(const MapExpr& map,
                                                  const SpaceSpec& space,
                                                  int trials,
                                                  std::uint64_t seed) {
  require(space.dim == map.dim(),
          "check_homogeneous_order_preserving: dimension mismatch");
  return check_homogeneous_order_preserving(as_hom_map(map), trials, seed);
}

}  // namespace conerad
