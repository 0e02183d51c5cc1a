#include "conerad/eigensolvers.hpp"

#include <algorithm>
#include <cmath>

#include "conerad/csv.hpp"

namespace conerad {

namespace {

Point normalized(const SpaceSpec& space, const Point& x, double* nrm = nullptr) {
  const double n = norm(space, x);
  if (nrm) *nrm = n;
  if (n <= 0.0) return x;
  return scaled(x, 1.0 / n);
}

double eigen_residual(const MapExpr& map, const SpaceSpec& space,
                      const Point& v, double r) {
  const Point bv = map.eval(v);
  const double nv = norm(space, v);
  if (nv <= 0.0) return 0.0;
  return norm(space, sub(bv, scaled(v, r))) / nv;
}

// Deficit of B(v) >= r v, scaled.
double lower_deficit(const MapExpr& map, const SpaceSpec& space,
                     const Point& v, double r) {
  const Point bv = map.eval(v);
  double worst = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    worst = std::max(worst, r * v[j] - bv[j]);
  const double nv = norm(space, v);
  return nv > 0.0 ? worst / nv : worst;
}

}  // namespace

SolveResult power_iterate(const MapExpr& map, const SpaceSpec& space,
                          const Point& x0, double tol, int max_iter) {
  require(space.dim == map.dim(), "power_iterate: dimension mismatch");
  require(in_cone(x0) && !is_zero(x0),
          "power_iterate: x0 must be a nonzero cone point");
  require(tol > 0.0 && max_iter >= 1, "power_iterate: bad tolerance/budget");

  SolveResult res;
  Point y = normalized(space, x0);
  Point prev = y, prev2 = y;
  for (int it = 1; it <= max_iter; ++it) {
    double growth = 0.0;
    Point z = map.eval(y);
    Point ynew = normalized(space, z, &growth);
    res.iterations = it;
    if (growth <= 0.0) {
      res.status = SolveStatus::degenerate_zero;
      res.r = 0.0;
      res.v = y;
      res.residual = 0.0;
      return res;
    }
    const double drift = companion_norm(space.kind, sub(ynew, y));
    if (drift < tol) {
      const double resid = eigen_residual(map, space, ynew, growth);
      if (resid < tol) {
        res.status = SolveStatus::converged;
        res.r = growth;
        res.v = ynew;
        res.residual = resid;
        return res;
      }
    }
    // Period-2 cycle: successive iterates keep swapping but every second
    // one repeats. Average over the cycle and test that candidate.
    if (it > 4 && companion_norm(space.kind, sub(ynew, prev)) < tol &&
        drift >= tol) {
      Point avg = normalized(space, add(ynew, y));
      double rr = 0.0;
      normalized(space, map.eval(avg), &rr);
      const double resid = eigen_residual(map, space, avg, rr);
      if (resid < tol) {
        res.status = SolveStatus::converged;
        res.r = rr;
        res.v = avg;
        res.residual = resid;
        return res;
      }
    }
    prev2 = prev;
    prev = y;
    y = std::move(ynew);
  }
  double growth = 0.0;
  normalized(space, map.eval(y), &growth);
  res.status = SolveStatus::max_iter;
  res.r = growth;
  res.v = y;
  res.residual = eigen_residual(map, space, y, growth);
  return res;
}

SolveResult cyclic_sum_eigenvector(const MapExpr& map, const Point& w, int m,
                                   double r, double tol) {
  require(map.is_positively_linear(),
          "cyclic_sum_eigenvector: map must be positively linear");
  require(in_cone(w) && !is_zero(w),
          "cyclic_sum_eigenvector: w must be a nonzero cone point");
  require(m >= 1 && r > 0.0 && tol > 0.0, "cyclic_sum_eigenvector: bad args");
  const SpaceSpec space{map.dim(), NormKind::sup};

  // Precondition: w is an m-periodic eigenvector at level r.
  Point bm = w;
  for (int j = 0; j < m; ++j) bm = map.eval(bm);
  const double rm = std::pow(r, m);
  if (norm(space, sub(bm, scaled(w, rm))) > tol * rm * norm(space, w))
    throw std::invalid_argument(
        "cyclic_sum_eigenvector: not an m-periodic eigenvector at this r");

  Point v(w.size(), 0.0);
  Point t = w;
  double weight = 1.0;
  for (int j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += weight * t[i];
    if (j + 1 < m) {
      t = map.eval(t);
      weight /= r;
    }
  }

  SolveResult res;
  res.v = normalized(space, v);
  res.r = r;
  res.iterations = m;
  res.residual = eigen_residual(map, space, res.v, r);
  res.status = res.residual <= m * tol ? SolveStatus::converged
                                       : SolveStatus::max_iter;
  return res;
}

SolveResult sup_lower_eigenvector(const MapExpr& map, const Point& w, int m,
                                  double r, double tol) {
  require(in_cone(w) && !is_zero(w),
          "sup_lower_eigenvector: w must be a nonzero cone point");
  require(m >= 1 && r > 0.0 && tol > 0.0, "sup_lower_eigenvector: bad args");
  const SpaceSpec space{map.dim(), NormKind::sup};

  Point bm = w;
  for (int j = 0; j < m; ++j) bm = map.eval(bm);
  const double rm = std::pow(r, m);
  const double slack = tol * rm * norm(space, w);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (bm[i] < rm * w[i] - slack)
      throw std::invalid_argument(
          "sup_lower_eigenvector: B^m(w) >= r^m w fails");

  Point v = w;
  Point t = w;
  double weight = 1.0;
  for (int j = 1; j < m; ++j) {
    t = map.eval(t);
    weight /= r;
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = std::max(v[i], weight * t[i]);
  }

  SolveResult res;
  res.v = normalized(space, v);
  res.r = r;
  res.iterations = m;
  res.residual = lower_deficit(map, space, res.v, r);
  res.status = res.residual <= m * tol ? SolveStatus::converged
                                       : SolveStatus::max_iter;
  return res;
}

SolveResult meet_iteration_lower(const MapExpr& map, const SpaceSpec& space,
                                 const Point& u, double r, int K) {
  require(space.dim == map.dim(), "meet_iteration_lower: dimension mismatch");
  require(in_cone(u), "meet_iteration_lower: u must lie in the cone");
  for (double c : u)
    require(c > 0.0, "meet_iteration_lower: u must be strictly positive");
  require(r > 0.0 && K >= 1, "meet_iteration_lower: bad args");

  Point x = u;
  double dressing = 1.0;
  for (int k = 1; k <= K; ++k) {
    dressing *= 0.5;
    Point y = scaled(map.eval(x), 1.0 / r);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += dressing * u[j];
    Point xnew = meet(y, u);
    // Monotone decrease is exact: every step applies monotone operations
    // to componentwise-ordered inputs.
    for (std::size_t j = 0; j < x.size(); ++j)
      if (xnew[j] > x[j])
        throw std::logic_error("meet_iteration_lower: iterates increased");
    x = std::move(xnew);
  }

  SolveResult res;
  res.iterations = K;
  const double size = companion_norm(space.kind, x);
  const double threshold = 1e-6 * companion_norm(space.kind, u);
  if (size <= threshold) {
    res.status = SolveStatus::degenerate_zero;
    res.v = x;
    res.r = r;
    res.residual = 0.0;
    return res;
  }
  res.status = SolveStatus::converged;
  res.v = normalized(space, x);
  res.r = r;
  res.residual = lower_deficit(map, space, res.v, r);
  return res;
}

double eta_via_meet_bisection(const MapExpr& map, const SpaceSpec& space,
                              const Point& u, double r_lo, double r_hi,
                              double tol_r, int K) {
  require(r_lo > 0.0 && r_lo < r_hi, "eta_via_meet_bisection: bad bracket");
  require(tol_r > 0.0, "eta_via_meet_bisection: bad tolerance");

  // Collapse at r + tol_r decays no faster than (1 - tol_r/r)^k, so the
  // step budget has to scale like r/tol_r to push survivors-by-accident
  // below the threshold.
  auto budget = [&](double r) {
    const double needed = 16.0 * r / tol_r;
    return std::max<int>(K, static_cast<int>(std::min(needed, 4.0e6)));
  };
  auto survives = [&](double r) {
    return meet_iteration_lower(map, space, u, r, budget(r)).status ==
           SolveStatus::converged;
  };

  bool lo_ok = survives(r_lo);
  bool hi_ok = survives(r_hi);
  if (!lo_ok || hi_ok)
    throw std::invalid_argument(
        "eta_via_meet_bisection: bracket does not straddle the collapse "
        "threshold");

  double lo = r_lo, hi = r_hi;
  while (hi - lo > tol_r) {
    const double mid = 0.5 * (lo + hi);
    if (survives(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

HomotopyResult epsilon_homotopy(const MapExpr& map, const SpaceSpec& space,
                                const Point& u, double eps0, int steps,
                                double tol) {
  require(space.dim == map.dim(), "epsilon_homotopy: dimension mismatch");
  for (double c : u)
    require(c > 0.0, "epsilon_homotopy: u must be strictly positive");
  require(eps0 > 0.0 && steps >= 0 && tol > 0.0, "epsilon_homotopy: bad args");

  HomotopyResult out;
  const double inner_tol = std::min(tol, 1e-12);
  Point start = u;
  double eps = eps0;
  for (int k = 0; k <= steps; ++k) {
    MapExpr pert = MapExpr::perturb(map, eps, u, space);
    SolveResult s = power_iterate(pert, space, start, inner_tol, 20000);
    out.trace.push_back({k, eps, s.r, s.residual});
    out.result = s;
    if (s.status != SolveStatus::converged) {
      out.result.status = SolveStatus::max_iter;  // partial trace kept
      return out;
    }
    start = s.v;
    eps *= 0.5;
  }
  // Residual of the final eigenvector against the unperturbed map.
  out.result.residual =
      eigen_residual(map, space, out.result.v, out.result.r);
  return out;
}

std::string HomotopyResult::trace_csv() const {
  std::string s = "k,epsilon,r,residual\n";
  for (const HomotopyStep& t : trace) {
    csv_append(s, t.k);
    s += ',';
    csv_append(s, t.epsilon);
    s += ',';
    csv_append(s, t.r);
    s += ',';
    csv_append(s, t.residual);
    s += '\n';
  }
  return s;
}

}  // namespace conerad
