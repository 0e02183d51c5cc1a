#include "conerad/radii.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "conerad/csv.hpp"
#include "conerad/opnorm.hpp"
#include "conerad/rng.hpp"

namespace conerad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One normalized orbit of the map through a probe, with per-n
// Collatz-Wielandt roots relative to the probe and log-space growth
// tracking. Everything is derived from a single O(N) pass.
struct ProbeScan {
  std::vector<double> lower_roots;  // [B^n]_x^{1/n}
  std::vector<double> upper_roots;  // ||B^n||_x^{1/n}, +inf possible
  std::vector<double> sup_roots;    // ||B^n x||_inf^{1/n} style roots
  std::vector<double> increments;   // log ||B(y_n)|| along normalized orbit
  double gamma = 0.0;
};

double root_of(double log_scale, double factor, int n) {
  if (factor == 0.0) return 0.0;
  if (std::isinf(factor)) return kInf;
  return std::exp((log_scale + std::log(factor)) / n);
}

ProbeScan scan_probe(const HomMap& fn, const SpaceSpec& space, const Point& x,
                     int horizon, bool want_lower, bool want_upper,
                     bool want_sup) {
  ProbeScan s;
  s.lower_roots.assign(horizon, 0.0);
  s.upper_roots.assign(horizon, 0.0);
  s.sup_roots.assign(horizon, 0.0);
  s.increments.reserve(horizon);

  const double nx = norm(space.kind, x);
  if (nx <= 0.0) return s;
  Point y = scaled(x, 1.0 / nx);
  double log_scale = std::log(nx);
  bool dead = false;

  for (int n = 1; n <= horizon; ++n) {
    if (!dead) {
      Point z = fn(y);
      require(in_cone(z), "enclosure probes: map must preserve the cone");
      const double nz = norm(space.kind, z);
      if (nz <= 0.0) {
        dead = true;
        s.increments.push_back(-kInf);
      } else {
        y = scaled(z, 1.0 / nz);
        log_scale += std::log(nz);
        s.increments.push_back(std::log(nz));
      }
    } else {
      s.increments.push_back(-kInf);
    }
    if (dead) continue;  // roots stay 0 once the orbit hits zero
    if (want_lower)
      s.lower_roots[n - 1] = root_of(log_scale, lower_gauge(y, x), n);
    if (want_upper)
      s.upper_roots[n - 1] = root_of(log_scale, u_norm(y, x), n);
    if (want_sup)
      s.sup_roots[n - 1] = root_of(log_scale, norm(NormKind::sup, y), n);
  }

  const int window = (horizon + 1) / 2;
  double acc = 0.0;
  bool zero = false;
  for (int i = horizon - window; i < horizon; ++i) {
    if (std::isinf(s.increments[i])) zero = true;
    acc += s.increments[i];
  }
  s.gamma = zero ? 0.0 : std::exp(acc / window);
  return s;
}

// Scaled matrix powers for the exact linear operator-norm roots.
std::vector<double> linear_opnorm_roots(const Matrix& a, NormKind kind,
                                        int horizon) {
  std::vector<double> roots(horizon, 0.0);
  Matrix m = a;
  double log_scale = 0.0;
  for (int n = 1; n <= horizon; ++n) {
    const double s = m.max_abs();
    if (s == 0.0) break;  // nilpotent from here on, roots stay 0
    m = m.scaled(1.0 / s);
    log_scale += std::log(s);
    roots[n - 1] = root_of(log_scale, linear_cone_norm(m, kind), n);
    if (n < horizon) m = m.multiply(a);
  }
  return roots;
}

bool strictly_positive(const Point& x) {
  for (double v : x)
    if (!(v > 0.0)) return false;
  return true;
}

}  // namespace

CwPair cw_numbers(const MapExpr& map, const Point& x) {
  require(in_cone(x) && !is_zero(x),
          "cw_numbers: x must be a nonzero cone point");
  const Point bx = map.eval(x);
  return CwPair{lower_gauge(bx, x), u_norm(bx, x)};
}

double eta_lower(const MapExpr& map, const Point& x, int horizon) {
  require(horizon >= 1, "eta_lower: horizon must be positive");
  require(in_cone(x) && !is_zero(x),
          "eta_lower: x must be a nonzero cone point");
  const SpaceSpec space{map.dim(), NormKind::sup};
  const HomMap fn = as_hom_map(map);
  ProbeScan s = scan_probe(fn, space, x, horizon, true, false, false);
  double best = 0.0;
  for (double v : s.lower_roots) best = std::max(best, v);
  return best;
}

CertifiedValue eta_upper(const MapExpr& map, const Point& u, int horizon) {
  require(horizon >= 1, "eta_upper: horizon must be positive");
  require(in_cone(u) && !is_zero(u),
          "eta_upper: u must be a nonzero cone point");
  const SpaceSpec space{map.dim(), NormKind::sup};
  const HomMap fn = as_hom_map(map);
  ProbeScan s = scan_probe(fn, space, u, horizon, false, true, false);
  double best = kInf;
  for (double v : s.upper_roots) best = std::min(best, v);
  return CertifiedValue{best, strictly_positive(u)};
}

GammaEstimate local_radius_gamma(const MapExpr& map, const SpaceSpec& space,
                                 const Point& x, int horizon) {
  require(horizon >= 1, "local_radius_gamma: horizon must be positive");
  require(in_cone(x), "local_radius_gamma: x must lie in the cone");
  GammaEstimate g;
  if (is_zero(x)) {
    g.value = 0.0;
    return g;
  }
  const HomMap fn = as_hom_map(map);
  ProbeScan s = scan_probe(fn, space, x, horizon, false, false, false);
  g.value = s.gamma;
  g.log_trace = std::move(s.increments);
  return g;
}

OpnormRoots opnorm_radius(const MapExpr& map, const SpaceSpec& space,
                          int horizon) {
  require(horizon >= 1, "opnorm_radius: horizon must be positive");
  require(space.dim == map.dim(), "opnorm_radius: dimension mismatch");
  OpnormRoots out;
  if (map.is_positively_linear()) {
    out.roots = linear_opnorm_roots(map.materialize_linear(), space.kind,
                                    horizon);
    out.certified = true;
    return out;
  }
  const HomMap fn = as_hom_map(map);
  const Point e = ones(static_cast<std::size_t>(space.dim));
  if (space.kind == NormKind::sup) {
    // Top element: ||B^n||_+ = ||B^n(e)||_inf for order-preserving maps.
    ProbeScan s = scan_probe(fn, space, e, horizon, false, false, true);
    out.roots = std::move(s.sup_roots);
    out.certified = true;
    return out;
  }
  // Heuristic: growth quotients of the all-ones orbit in the ambient norm.
  ProbeScan s = scan_probe(fn, space, e, horizon, false, false, false);
  out.roots.assign(horizon, 0.0);
  double acc = 0.0;
  for (int n = 1; n <= horizon; ++n) {
    acc += s.increments[n - 1];
    out.roots[n - 1] = std::isinf(acc) ? 0.0 : std::exp(acc / n);
  }
  out.certified = false;
  return out;
}

namespace {

struct ProbeSpec {
  std::string id;
  Point x;
  bool lower_side = false;
  bool upper_side = false;
};

// Normalized iteration used to seed the refined probes; plain and cheap.
Point iterate_probe(const HomMap& fn, const SpaceSpec& space, Point y,
                    int steps) {
  const double n0 = norm(space.kind, y);
  if (n0 <= 0.0) return {};
  y = scaled(y, 1.0 / n0);
  for (int i = 0; i < steps; ++i) {
    Point z = fn(y);
    const double nz = norm(space.kind, z);
    if (nz <= 0.0) return {};
    y = scaled(z, 1.0 / nz);
  }
  return y;
}

Point floored(Point x, double floor_value) {
  for (double& v : x) v = std::max(v, floor_value);
  return x;
}

RadiusReport enclosure_report_core(const HomMap& fn, const Matrix* linear,
                                   const SpaceSpec& space, int horizon,
                                   int probes, std::uint64_t seed, Exec exec) {
  require(horizon >= 1, "enclosure_report: horizon must be positive");
  require(probes >= 0, "enclosure_report: probe count must be nonnegative");
  const std::size_t n = static_cast<std::size_t>(space.dim);

  RadiusReport rep;
  rep.horizon = horizon;
  const HomCheckReport check = check_homogeneous_order_preserving(
      fn, 200, seed ^ 0x9e3779b97f4a7c15ull);
  rep.map_certified = check.homogeneous && check.order_preserving;

  // Probe menu, assembled serially so the seed fully determines it.
  std::vector<ProbeSpec> specs;
  const std::size_t coord_cap = std::min<std::size_t>(n, 8);
  for (std::size_t j = 0; j < coord_cap; ++j)
    specs.push_back({"e" + std::to_string(j + 1), unit_vector(n, j), true,
                     false});
  for (std::size_t m = 2; m <= coord_cap; ++m)
    specs.push_back({"x" + std::to_string(m), prefix_indicator(n, m), true,
                     false});
  {
    Rng rng(seed);
    for (int i = 0; i < probes; ++i)
      specs.push_back({"dir" + std::to_string(i + 1), rng.dirichlet(n), true,
                       false});
  }
  Point piter = iterate_probe(fn, space, ones(n),
                              std::max(200, 2 * horizon));
  if (!piter.empty())
    specs.push_back({"piter", piter, true, false});

  specs.push_back({"ones", ones(n), false, true});
  {
    Point t1(n), t2(n);
    for (std::size_t j = 0; j < n; ++j) {
      t1[j] = std::pow(0.5, static_cast<double>(j));
      t2[j] = std::pow(0.9, static_cast<double>(j));
    }
    specs.push_back({"theta05", std::move(t1), false, true});
    specs.push_back({"theta09", std::move(t2), false, true});
  }
  {
    Point refined = iterate_probe(fn, space, ones(n), std::min(horizon, 30));
    if (!refined.empty())
      specs.push_back({"refined", floored(std::move(refined), 1e-12), false,
                       true});
  }
  if (!piter.empty())
    specs.push_back({"piter+", floored(piter, 1e-12), false, true});

  const bool want_sup_for_ones =
      linear == nullptr && companion_kind(space.kind) == NormKind::sup;

  // Independent scans, one slot per probe: safe and schedule-invariant.
  std::vector<ProbeScan> scans(specs.size());
  const long count = static_cast<long>(specs.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      const ProbeSpec& p = specs[i];
      scans[i] = scan_probe(fn, space, p.x, horizon, p.lower_side,
                            p.upper_side,
                            p.id == "ones" && want_sup_for_ones);
    }
  } else {
    for (long i = 0; i < count; ++i) {
      const ProbeSpec& p = specs[i];
      scans[i] = scan_probe(fn, space, p.x, horizon, p.lower_side,
                            p.upper_side,
                            p.id == "ones" && want_sup_for_ones);
    }
  }

  // Operator-norm roots on the certified paths only.
  std::vector<double> opnorm_roots;
  std::vector<double> comp_opnorm_roots;
  if (linear != nullptr) {
    opnorm_roots = linear_opnorm_roots(*linear, space.kind, horizon);
    comp_opnorm_roots =
        companion_kind(space.kind) == space.kind
            ? opnorm_roots
            : linear_opnorm_roots(*linear, companion_kind(space.kind),
                                  horizon);
  } else if (space.kind == NormKind::sup) {
    for (std::size_t i = 0; i < specs.size(); ++i)
      if (specs[i].id == "ones") opnorm_roots = scans[i].sup_roots;
    comp_opnorm_roots = opnorm_roots;
  } else if (companion_kind(space.kind) == NormKind::sup) {  // bv space
    for (std::size_t i = 0; i < specs.size(); ++i)
      if (specs[i].id == "ones") comp_opnorm_roots = scans[i].sup_roots;
  }

  // Assembly in a fixed order; reductions are serial min/max over the
  // already-filled tables, so parallel and serial runs emit the same bytes.
  const bool cert = rep.map_certified;
  auto emit_rows = [&](EntryKind kind, bool lower_side) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const ProbeSpec& p = specs[i];
      if ((lower_side && !p.lower_side) || (!lower_side && !p.upper_side))
        continue;
      const std::vector<double>& vals =
          lower_side ? scans[i].lower_roots : scans[i].upper_roots;
      for (int nn = 1; nn <= horizon; ++nn) {
        const double v = vals[nn - 1];
        if (std::isinf(v)) continue;  // inf upper numbers carry no bound
        rep.entries.push_back({nn, p.id, kind, v, cert});
      }
    }
  };
  emit_rows(EntryKind::lower, true);
  emit_rows(EntryKind::upper, false);
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (specs[i].lower_side)
      rep.entries.push_back(
          {horizon, specs[i].id, EntryKind::gamma, scans[i].gamma, false});
  for (int nn = 1; nn <= horizon; ++nn)
    if (!opnorm_roots.empty())
      rep.entries.push_back(
          {nn, "opnorm", EntryKind::opnorm, opnorm_roots[nn - 1], cert});
  // Companion tables: the Collatz-Wielandt tables are norm-free and carry
  // over verbatim; the operator-norm roots switch to the companion norm
  // (the sup norm when the ambient norm is bv).
  emit_rows(EntryKind::comp_lower, true);
  emit_rows(EntryKind::comp_upper, false);
  for (int nn = 1; nn <= horizon; ++nn)
    if (!comp_opnorm_roots.empty())
      rep.entries.push_back({nn, "opnorm", EntryKind::comp_upper,
                             comp_opnorm_roots[nn - 1], cert});

  rep.enclosure.lower = 0.0;
  rep.enclosure.lower_certified = cert;
  rep.enclosure.upper = kInf;
  rep.enclosure.upper_certified = false;
  for (const RadiusEntry& e : rep.entries) {
    if (!e.certified) continue;
    if (e.kind == EntryKind::lower)
      rep.enclosure.lower = std::max(rep.enclosure.lower, e.value);
    if (e.kind == EntryKind::upper) {
      rep.enclosure.upper = std::min(rep.enclosure.upper, e.value);
      rep.enclosure.upper_certified = true;
    }
  }
  if (rep.enclosure.lower_certified && rep.enclosure.upper_certified) {
    const double slack = 1e-9 * std::max(1.0, std::abs(rep.enclosure.upper));
    if (rep.enclosure.lower > rep.enclosure.upper + slack)
      throw std::runtime_error(
          "enclosure_report: certified sandwich violated");
  }
  return rep;
}

}  // namespace

RadiusReport enclosure_report(const MapExpr& map, const SpaceSpec& space,
                              int horizon, int probes, std::uint64_t seed,
                              Exec exec) {
  require(space.dim == map.dim(), "enclosure_report: dimension mismatch");
  if (map.is_positively_linear()) {
    const Matrix a = map.materialize_linear();
    return enclosure_report_core(as_hom_map(map), &a, space, horizon, probes,
                                 seed, exec);
  }
  return enclosure_report_core(as_hom_map(map), nullptr, space, horizon,
                               probes, seed, exec);
}

RadiusReport enclosure_report(const HomMap& fn, const SpaceSpec& space,
                              int horizon, int probes, std::uint64_t seed,
                              Exec exec) {
  require(space.dim == fn.dim, "enclosure_report: dimension mismatch");
  return enclosure_report_core(fn, nullptr, space, horizon, probes, seed,
                               exec);
}

std::string RadiusReport::to_csv() const {
  std::string s = "n,probe_id,kind,value,certified\n";
  for (const RadiusEntry& e : entries) {
    csv_append(s, e.n);
    s += ',';
    s += e.probe_id;
    s += ',';
    s += to_string(e.kind);
    s += ',';
    csv_append(s, e.value);
    s += ',';
    s += e.certified ? '1' : '0';
    s += '\n';
  }
  return s;
}

std::string RadiusReport::summary() const {
  char buf[160];
  if (!map_certified)
    return "heuristic tables only (map failed the order-preserving check)\n";
  if (!enclosure.upper_certified) {
    std::snprintf(buf, sizeof(buf), "r+ >= %.6f (no upper certificate)\n",
                  enclosure.lower);
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "r+ ∈ [%.6f, %.6f] certified\n",
                enclosure.lower, enclosure.upper);
  return buf;
}

}  // namespace conerad
