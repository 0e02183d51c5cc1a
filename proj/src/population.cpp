#include "conerad/population.hpp"

#include <algorithm>
#include <cmath>

#include "conerad/csv.hpp"
#include "conerad/opnorm.hpp"
#include "conerad/rng.hpp"

namespace conerad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_rank(const RankConfig& cfg) {
  require(cfg.n >= 1, "rank config: n must be positive");
  require(static_cast<int>(cfg.q.size()) == cfg.n,
          "rank config: q must have length n");
  require(static_cast<int>(cfg.p.size()) == cfg.n - 1,
          "rank config: p must have length n-1");
  require(cfg.s >= 0.0, "rank config: s must be nonnegative");
  for (double v : cfg.q) require(v >= 0.0, "rank config: q must be nonnegative");
  for (double v : cfg.p) require(v >= 0.0, "rank config: p must be nonnegative");
  for (const BetaEntry& b : cfg.beta) {
    require(b.j >= 1 && b.j <= cfg.n && b.k >= 1 && b.k <= cfg.n,
            "rank config: beta index out of range");
    require(b.value >= 0.0, "rank config: beta must be nonnegative");
  }
}

double beta_total(const RankConfig& cfg) {
  double s = 0.0;
  for (const BetaEntry& b : cfg.beta) s += b.value;
  return s;
}

}  // namespace

RankModel build_rank_model(const RankConfig& cfg) {
  validate_rank(cfg);
  require(cfg.s == 0.0,
          "build_rank_model: s > 0 is the semiflow path, not a homogeneous "
          "map");
  Point u(static_cast<std::size_t>(cfg.n), 0.0);
  u[0] = 1.0;
  for (int j = 2; j <= cfg.n; ++j) u[j - 1] = cfg.p[j - 2] + cfg.q[j - 1];
  const double c = std::max(cfg.q[0] + beta_total(cfg), 1.0);
  return RankModel{MapExpr::rank(cfg.params()), std::move(u), c};
}

RankCwValues rank_cw_formulas(const RankConfig& cfg, int m) {
  validate_rank(cfg);
  require(m >= 1 && m <= cfg.n, "rank_cw_formulas: m out of range");
  RankCwValues out;

  double fertility = cfg.q[0];
  for (const BetaEntry& b : cfg.beta)
    if (b.j <= m && b.k <= m) fertility += b.value;

  if (m == 1) {
    out.at_prefix_indicator = fertility;  // q_1 + beta_11
    out.at_coordinate = fertility;
    return out;
  }
  double chain = kInf;
  for (int j = 2; j <= m; ++j)
    chain = std::min(chain, std::max(cfg.p[j - 2], cfg.q[j - 1]));
  out.at_prefix_indicator = std::min(fertility, chain);
  out.at_coordinate = cfg.q[m - 1];
  return out;
}

RankConditions rank_positivity_conditions(const RankConfig& cfg) {
  validate_rank(cfg);
  RankConditions out;
  double beta11 = 0.0;
  for (const BetaEntry& b : cfg.beta)
    if (b.j == 1 && b.k == 1) beta11 += b.value;
  out.cond1 = cfg.q[0] + beta11 > 0.0;
  for (int j = 2; j <= cfg.n && !out.cond1; ++j)
    if (cfg.q[j - 1] > 0.0) out.cond1 = true;

  for (const BetaEntry& b : cfg.beta) {
    if (b.value <= 0.0) continue;
    const int m = std::max(b.j, b.k);
    bool chain = true;
    for (int i = 1; i <= m - 1; ++i)
      if (!(cfg.p[i - 1] > 0.0)) chain = false;
    if (chain) {
      out.cond2 = true;
      break;
    }
  }
  return out;
}

TwoSexEigen twosex_closed_form(const TwoSexParams& par) {
  require(par.pf >= 0.0 && par.pm >= 0.0 && par.bf >= 0.0 && par.bm >= 0.0,
          "twosex_closed_form: parameters must be nonnegative");
  TwoSexEigen out;
  const double bsum = par.bf + par.bm;
  if (bsum > 0.0) {
    out.lambda = (par.bf * par.bm + par.bm * par.pf + par.bf * par.pm) / bsum;
    out.f = (par.bf + par.pf - par.pm) / bsum;
    out.m = 1.0 - out.f;  // keeps f + m = 1 exact
    out.interior = out.lambda > par.pf && out.lambda > par.pm;
    return out;
  }
  // Decoupled survival: the dominant pair sits on an axis.
  if (par.pf >= par.pm) {
    out.lambda = par.pf;
    out.f = 1.0;
    out.m = 0.0;
  } else {
    out.lambda = par.pm;
    out.f = 0.0;
    out.m = 1.0;
  }
  out.interior = false;
  return out;
}

double ContractionRenorm::eval(const Point& x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < powers.size(); ++k)
    s += weights[k] * companion_norm(kind, powers[k].apply(x));
  return s;
}

ContractionRenorm contraction_renorm(const MapExpr& linear_map,
                                     const SpaceSpec& space, double r,
                                     int verify_samples, std::uint64_t seed) {
  require(linear_map.is_positively_linear(),
          "contraction_renorm: map must be positively linear");
  require(r > 0.0 && r < 1.0, "contraction_renorm: r must lie in (0, 1)");
  const Matrix a = linear_map.materialize_linear();
  const NormKind kind = companion_kind(space.kind);

  // Smallest m with #A^{m+1}#+ < r^{m+1}, norms tracked in log space so the
  // search survives transient growth.
  int m = -1;
  {
    Matrix pw = a;
    double log_scale = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double s = pw.max_abs();
      double log_norm;
      if (s == 0.0) {
        log_norm = -kInf;
      } else {
        pw = pw.scaled(1.0 / s);
        log_scale += std::log(s);
        const double nv = linear_cone_norm(pw, kind);
        log_norm = nv > 0.0 ? log_scale + std::log(nv) : -kInf;
      }
      if (log_norm < (k + 1) * std::log(r)) {
        m = k;
        break;
      }
      if (s != 0.0) pw = pw.multiply(a);
    }
  }
  if (m < 0)
    throw std::runtime_error(
        "contraction_renorm: no m <= 200 works; r too close to the spectral "
        "radius");

  ContractionRenorm out;
  out.m = m;
  out.kind = kind;
  Matrix pw = Matrix::identity(a.dim());
  double w = 1.0;
  for (int k = 0; k <= m; ++k) {
    out.powers.push_back(pw);
    out.weights.push_back(w);
    if (k < m) {
      pw = pw.multiply(a);
      w /= r;
    }
  }

  Rng rng(seed);
  for (int t = 0; t < verify_samples; ++t) {
    const Point x = rng.cone_point(a.dim(), 0.0, 2.0);
    const double lhs = out.eval(a.apply(x));
    const double rhs = r * out.eval(x);
    if (lhs > rhs * (1.0 + 1e-12))
      throw std::runtime_error("contraction_renorm: contraction check failed");
  }
  return out;
}

Point saturating_step(const RankConfig& cfg, const Point& x) {
  require_dim(x, static_cast<std::size_t>(cfg.n), "saturating_step");
  require(in_cone(x), "saturating_step: x must lie in the cone");
  static thread_local RankParams scratch;
  const double mass = norm(NormKind::sum, x);
  const double damp = 1.0 / (1.0 + cfg.s * mass);
  // The map is jointly linear in its parameters, so scaling the parameters
  // equals scaling the output.
  Point y(x.size(), 0.0);
  double first = cfg.q[0] * x[0];
  for (const BetaEntry& b : cfg.beta)
    first += b.value * std::min(x[b.j - 1], x[b.k - 1]);
  y[0] = damp * first;
  for (int j = 2; j <= cfg.n; ++j)
    y[j - 1] =
        damp * std::max(cfg.p[j - 2] * x[j - 2], cfg.q[j - 1] * x[j - 1]);
  return y;
}

Matrix dissipativity_comparison_matrix(const RankConfig& cfg, double eps,
                                       double c) {
  validate_rank(cfg);
  require(eps >= 0.0 && c > 0.0, "dissipativity comparison: bad eps or c");
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  const double damp = 1.0 / (1.0 + cfg.s * c);
  Matrix a(n);
  a(0, 0) = eps;
  for (const BetaEntry& b : cfg.beta)
    a(0, b.j - 1) += b.value * damp;  // beta~ = sup over ||x|| >= c
  for (std::size_t j = 1; j < n; ++j) {
    a(j, j - 1) += eps;
    a(j, j) += eps;
  }
  return a;
}

namespace {

// Power-method estimate of the spectral radius of a nonnegative matrix.
double spectral_radius_estimate(const Matrix& a) {
  Point v(a.dim(), 1.0);
  double rho = 0.0;
  for (int it = 0; it < 600; ++it) {
    Point w = a.apply(v);
    const double nw = norm(NormKind::sum, w);
    if (nw == 0.0) return 0.0;
    rho = nw / norm(NormKind::sum, v);
    v = scaled(w, 1.0 / nw);
  }
  return rho;
}

}  // namespace

DissipativityReport dissipativity_check(const RankConfig& cfg,
                                        const DissipativityParams& par,
                                        Exec exec) {
  validate_rank(cfg);
  require(par.seeds >= 1 && par.steps >= 1, "dissipativity_check: bad budget");
  require(par.c > 0.0, "dissipativity_check: c must be positive");

  DissipativityReport rep;
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  const Matrix a = dissipativity_comparison_matrix(cfg, par.eps, par.c);

  // Premise: sample the region ||x||_1 >= c at doubling radii. The overhang
  // (F(x) - A(x))^+ must not keep growing with the radius.
  Rng rng(par.seed);
  const int tiers = 5, per_tier = 48;
  std::vector<double> tier_max(tiers, 0.0);
  for (int t = 0; t < tiers; ++t) {
    const double radius = par.c * std::pow(2.0, t);
    for (int i = 0; i < per_tier; ++i) {
      Point x = scaled(rng.dirichlet(n), radius);  // ||x||_1 = radius
      const Point fx = saturating_step(cfg, x);
      const Point ax = a.apply(x);
      double overhang = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        overhang += std::max(0.0, fx[j] - ax[j]);
      if (overhang > tier_max[t]) tier_max[t] = overhang;
      if (overhang > rep.premise_c_tilde) {
        rep.premise_c_tilde = overhang;
        rep.worst_premise_x = x;
      }
    }
  }
  double inner_max = 0.0;
  for (int t = 0; t + 1 < tiers; ++t) inner_max = std::max(inner_max, tier_max[t]);
  rep.premise_ok = tier_max[tiers - 1] <= inner_max * (1.0 + 1e-9) + 1e-12;

  rep.contraction_rho = spectral_radius_estimate(a);
  rep.contraction_ok = rep.contraction_rho < 1.0;

  // Constructive absorbing bound via the contraction renorm: with
  // ||A||~ <= r < 1 and monotone ||.||~,
  //   ||F(x)||~ <= r ||x||~ + c~  on ||x||_1 >= c,
  // and on the ball a certified ceiling from the sup-norm operator bound.
  rep.bound_c_hat = kInf;
  if (rep.contraction_ok) {
    const double r = 0.5 * (1.0 + rep.contraction_rho);
    const SpaceSpec sum_space{cfg.n, NormKind::sum};
    ContractionRenorm renorm = contraction_renorm(
        MapExpr::linear(a), sum_space, std::min(r, 0.999), 1000, par.seed + 7);
    rep.renorm_weights = renorm.weights;

    double weight_total = 0.0;
    for (std::size_t k = 0; k < renorm.powers.size(); ++k)
      weight_total += renorm.weights[k] *
                      linear_cone_norm(renorm.powers[k], renorm.kind);
    // c~ in the renorm: overhang y is a cone point, ||y||~ <= W * ||y||_1.
    const double c_tilde_renorm = weight_total * rep.premise_c_tilde;
    // Ceiling on the ball ||x||_1 <= c (saturation only shrinks B).
    RankConfig hom = cfg;
    hom.s = 0.0;
    const RankModel model = build_rank_model(hom);
    const double b_sup = norm(NormKind::sup, model.map.eval(ones(n)));
    const double ball_ceiling =
        weight_total * static_cast<double>(n) * b_sup * par.c;
    const double rr = std::min(r, 0.999);
    rep.bound_c_hat = std::max({ball_ceiling, c_tilde_renorm / (1.0 - rr),
                               rr * weight_total * par.c + c_tilde_renorm});
  }

  // Orbit ensemble: one deterministic sub-seed per start, slots filled
  // independently so the schedule cannot change the report.
  rep.orbit_limsup.assign(par.seeds, 0.0);
  rep.trajectories.assign(par.seeds, {});
  const SpaceSpec sum_space{cfg.n, NormKind::sum};
  auto run_seed = [&](int i) {
    Rng local(par.seed * 1000003ull + static_cast<std::uint64_t>(i));
    Point x0 = scaled(local.dirichlet(n),
                      local.uniform(0.0, par.start_radius));
    OrbitSummary orbit = orbit_simulate(
        [&](const Point& x) { return saturating_step(cfg, x); }, sum_space,
        x0, par.steps, false);
    rep.trajectories[i] = orbit.norms;
    double lim = 0.0;
    const int half = par.steps / 2;
    for (int k = half; k < static_cast<int>(orbit.norms.size()); ++k)
      lim = std::max(lim, orbit.norms[k]);
    rep.orbit_limsup[i] = lim;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < par.seeds; ++i) run_seed(i);
  } else {
    for (int i = 0; i < par.seeds; ++i) run_seed(i);
  }
  return rep;
}

OrbitSummary orbit_simulate(const std::function<Point(const Point&)>& step,
                            const SpaceSpec& space, const Point& x0,
                            int steps, bool normalized) {
  require(steps >= 0, "orbit_simulate: steps must be nonnegative");
  require(in_cone(x0), "orbit_simulate: x0 must lie in the cone");
  OrbitSummary out;
  out.norms.reserve(steps + 1);
  out.log_norms.reserve(steps + 1);

  double log_norm = -kInf;
  Point y = x0;
  {
    const double n0 = norm(space, x0);
    if (n0 > 0.0) {
      log_norm = std::log(n0);
      if (normalized) y = scaled(x0, 1.0 / n0);
    }
  }
  out.norms.push_back(std::exp(log_norm));
  out.log_norms.push_back(log_norm);

  for (int k = 1; k <= steps; ++k) {
    if (out.hit_zero) {
      out.norms.push_back(0.0);
      out.log_norms.push_back(-kInf);
      out.log_growth.push_back(-kInf);
      continue;
    }
    Point z = step(y);
    const double nz = norm(space, z);
    if (!std::isfinite(nz))
      throw std::runtime_error("orbit_simulate: overflow at step " +
                               std::to_string(k));
    if (nz == 0.0) {
      out.hit_zero = true;
      out.zero_step = k;
      out.norms.push_back(0.0);
      out.log_norms.push_back(-kInf);
      out.log_growth.push_back(-kInf);
      y = std::move(z);
      continue;
    }
    if (normalized) {
      out.log_growth.push_back(std::log(nz));
      log_norm += std::log(nz);
      y = scaled(z, 1.0 / nz);
    } else {
      const double prev = out.log_norms.back();
      out.log_growth.push_back(std::log(nz) - prev);
      log_norm = std::log(nz);
      y = std::move(z);
    }
    out.norms.push_back(std::exp(log_norm));
    out.log_norms.push_back(log_norm);
  }
  return out;
}

OrbitSummary orbit_simulate(const MapExpr& map, const SpaceSpec& space,
                            const Point& x0, int steps, bool normalized) {
  require(space.dim == map.dim(), "orbit_simulate: dimension mismatch");
  return orbit_simulate([&](const Point& x) { return map.eval(x); }, space,
                        x0, steps, normalized);
}

std::string OrbitSummary::to_csv() const {
  std::string s = "step,norm,log_norm,log_growth\n";
  for (std::size_t k = 0; k < norms.size(); ++k) {
    csv_append(s, static_cast<long>(k));
    s += ',';
    csv_append(s, norms[k]);
    s += ',';
    csv_append(s, log_norms[k]);
    s += ',';
    csv_append(s, k == 0 ? 0.0 : log_growth[k - 1]);
    s += '\n';
  }
  return s;
}

std::string DissipativityReport::to_csv() const {
  std::string s =
      "seed,orbit_limsup,bound_c_hat,premise_ok,contraction_ok\n";
  for (std::size_t i = 0; i < orbit_limsup.size(); ++i) {
    csv_append(s, static_cast<long>(i));
    s += ',';
    csv_append(s, orbit_limsup[i]);
    s += ',';
    csv_append(s, bound_c_hat);
    s += ',';
    s += premise_ok ? '1' : '0';
    s += ',';
    s += contraction_ok ? '1' : '0';
    s += '\n';
  }
  return s;
}

std::string DissipativityReport::trajectories_csv() const {
  std::string s = "seed,step,norm\n";
  for (std::size_t i = 0; i < trajectories.size(); ++i)
    for (std::size_t k = 0; k < trajectories[i].size(); ++k) {
      csv_append(s, static_cast<long>(i));
      s += ',';
      csv_append(s, static_cast<long>(k));
      s += ',';
      csv_append(s, trajectories[i][k]);
      s += '\n';
    }
  return s;
}

}  // namespace conerad
