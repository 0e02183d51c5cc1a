#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conerad/companion.hpp"
#include "conerad/map_expr.hpp"
#include "conerad/matrix.hpp"
#include "conerad/space.hpp"

namespace conerad {

struct TwoSexParams {
  double pf = 0.0;  // female survival
  double pm = 0.0;  // male survival
  double bf = 0.0;  // female births per mated pair
  double bm = 0.0;  // male births per mated pair
};

/// Rank-structured population configuration. s = 0 is the autonomous
/// homogeneous map; s > 0 scales every parameter by 1/(1 + s*||x||_1),
/// giving the saturating semiflow used by the dissipativity checker.
struct RankConfig {
  int n = 0;
  std::vector<double> q;        // survival in rank, length n
  std::vector<double> p;        // promotion, length n-1
  std::vector<BetaEntry> beta;  // fertility coefficients
  double s = 0.0;

  RankParams params() const { return RankParams{q, p, beta}; }
};

struct RankModel {
  MapExpr map;
  Point u;   // uniform order bound: u_1 = 1, u_j = p_{j-1} + q_j
  double c;  // B(x) <= c * ||x|| * u on the cone
};

/// Builds the homogeneous rank map together with its uniform order bound.
/// Requires s = 0; the saturating case goes through the semiflow path.
RankModel build_rank_model(const RankConfig& cfg);

struct RankCwValues {
  double at_prefix_indicator = 0.0;  // [B]_{x^m}
  double at_coordinate = 0.0;        // [B]_{e^m}
};

/// Closed-form lower Collatz-Wielandt numbers of the rank map at the
/// prefix indicator x^m and the coordinate vector e^m.
RankCwValues rank_cw_formulas(const RankConfig& cfg, int m);

struct RankConditions {
  bool cond1 = false;  // q_1 + beta_11 > 0, or q_j > 0 for some j >= 2
  bool cond2 = false;  // beta_jk > 0 with the promotion chain below alive
};

/// The two sufficient positivity conditions; when both fail the cone
/// spectral radius is zero.
RankConditions rank_positivity_conditions(const RankConfig& cfg);

struct TwoSexEigen {
  double lambda = 0.0;
  double f = 0.0;
  double m = 0.0;
  bool interior = false;
};

/// Closed-form dominant eigenpair of the two-sex map. With bf + bm > 0:
///   lambda = (bf*bm + bm*pf + bf*pm) / (bf + bm)
///   f = (bf + pf - pm) / (bf + bm),  m = 1 - f
/// and the eigenvector is interior exactly when lambda beats both survival
/// eigenvalues. With bf = bm = 0 the dominant pair is the better axis.
TwoSexEigen twosex_closed_form(const TwoSexParams& par);

struct ContractionRenorm {
  int m = 0;                    // number of extra terms
  std::vector<double> weights;  // r^{-k}, k = 0..m
  std::vector<Matrix> powers;   // A^k, k = 0..m
  NormKind kind = NormKind::sup;

  /// ||x||~ = sum_k r^{-k} #A^k x#.
  double eval(const Point& x) const;
};

/// Equivalent monotone norm that turns a positive linear map with spectral
/// radius below r into an r-contraction: picks the smallest m with
/// #A^{m+1}#+ < r^{m+1} and verifies ||A x||~ <= r ||x||~ on seeded cone
/// samples (hard failure if any sample violates it).
ContractionRenorm contraction_renorm(const MapExpr& linear_map,
                                     const SpaceSpec& space, double r,
                                     int verify_samples = 1000,
                                     std::uint64_t seed = 1);

struct DissipativityParams {
  double eps = 0.0;     // linear comparison weight (Eq. ``A_j'' rows)
  double c = 1.0;       // premise is tested on samples with ||x|| >= c
  int seeds = 50;       // number of random starts
  int steps = 200;      // forward steps per orbit
  std::uint64_t seed = 1;
  double start_radius = 100.0;  // starts drawn with ||x0||_1 <= this
};

struct DissipativityReport {
  bool premise_ok = false;
  bool contraction_ok = false;
  double premise_c_tilde = 0.0;  // max observed ||(F(x) - A(x))^+||_1
  Point worst_premise_x;
  double contraction_rho = 0.0;  // ||A||_1 (exact induced bound)
  std::vector<double> renorm_weights;
  std::vector<double> orbit_limsup;  // per seed, sum norm over last half
  double bound_c_hat = 0.0;
  std::vector<std::vector<double>> trajectories;  // per seed, per step norm

  std::string to_csv() const;
  std::string trajectories_csv() const;
};

/// Checks the point-dissipativity premise F(x) <= A(x) + y on samples,
/// verifies the comparison map contracts, simulates seeded orbits, and
/// reports a concrete absorbing bound c_hat that every orbit limsup must
/// respect when premise and contraction hold.
DissipativityReport dissipativity_check(const RankConfig& cfg,
                                        const DissipativityParams& par,
                                        Exec exec = Exec::parallel);

/// Saturating semiflow step F(x) = B(x) / (1 + s * ||x||_1).
Point saturating_step(const RankConfig& cfg, const Point& x);

/// Linear comparison map of the dissipativity test: first row
/// eps*x_1 + sum_j (sum_k beta~_jk) x_j, rows j >= 2: eps*(x_{j-1} + x_j),
/// with beta~ = beta / (1 + s*c).
Matrix dissipativity_comparison_matrix(const RankConfig& cfg, double eps,
                                       double c);

struct OrbitSummary {
  std::vector<double> norms;       // per step, exp of the log-space track
  std::vector<double> log_norms;   // per step
  std::vector<double> log_growth;  // per-step increments
  bool hit_zero = false;
  int zero_step = -1;

  std::string to_csv() const;
};

/// Shared forward-orbit engine. Normalized mode renormalizes each step and
/// tracks growth in log space (for growth factors); raw mode iterates the
/// map as-is (for semiflows, which are bounded).
OrbitSummary orbit_simulate(const std::function<Point(const Point&)>& step,
                            const SpaceSpec& space, const Point& x0,
                            int steps, bool normalized);
OrbitSummary orbit_simulate(const MapExpr& map, const SpaceSpec& space,
                            const Point& x0, int steps, bool normalized);

}  // namespace conerad
