#pragma once

#include "conerad/point.hpp"
#include "conerad/space.hpp"

namespace conerad {

/// Whether kernels run their data-parallel loops with OpenMP or serially.
/// Both paths must produce bit-identical results; the serial path is the
/// reference the tests compare against.
enum class Exec { serial, parallel };

/// Monotone companion half-norm psi(x) = d(x, -X+), the distance from x to
/// the antitone cone. Closed forms per norm kind:
///   sup/sum/euclid (vector lattices):  psi(x) = ||x^+||
///   bv:                                psi(x) = max(0, max_j x_j)
/// The bv form is attained by the constant majorant c*(1,...,1) and matched
/// from below by the sup-norm comparison; the grid oracle double-checks it.
double companion_half_norm(const SpaceSpec& space, const Point& x);
double companion_half_norm(NormKind kind, const Point& x);

/// Monotone companion norm  #x# = max{psi(x), psi(-x)}.  Always <= ||x||;
/// for bv it collapses to the sup norm.
double companion_norm(const SpaceSpec& space, const Point& x);
double companion_norm(NormKind kind, const Point& x);

/// Norm kind whose restriction to the cone equals the companion norm.
/// sup, sum and euclid are monotone on the orthant so they are their own
/// companions there; bv's companion is the sup norm.
inline NormKind companion_kind(NormKind kind) {
  return kind == NormKind::bv ? NormKind::sup : kind;
}

/// u-norm ||x||_u = max over supp u of |x_j|/u_j, +infinity when x carries
/// mass outside supp u. Requires u in the cone, u != 0.
double u_norm(const Point& x, const Point& u);

/// Lower gauge [x]_u = sup{beta >= 0 : beta*u <= x} = min over supp u of
/// x_j/u_j. Requires x, u in the cone, u != 0.
double lower_gauge(const Point& x, const Point& u);

struct GaugeResult {
  double value = 0.0;
  Point witness;
};

/// Normal-point gauge in the bv space: max{||v||_bv : 0 <= v <= x}.
/// The maximum of the (convex) variation norm over the box [0, x] is
/// attained at a vertex, and the vertex optimum decomposes over consecutive
/// coordinates, so a two-state chain DP computes it exactly in O(n).
/// Unbounded growth of this gauge along truncations is what witnesses the
/// non-normality of the bv cone.
GaugeResult normal_point_gauge(const Point& x);

struct OracleBracket {
  double lower = 0.0;  // dual-feasible value, <= psi(x)
  double upper = 0.0;  // primal-feasible value, >= psi(x)
};

/// Independent two-sided bracket for the companion half-norm, used to
/// validate the closed forms. The upper side scans a grid of nonnegative
/// shifts z in [0, radius]^n and takes min ||x + z|| (every grid point is
/// primal feasible); the lower side scans nonnegative functionals scaled to
/// dual norm one and takes max <f, x> (every candidate is dual feasible).
/// Both sides locally refine around their incumbent, which tightens the
/// bracket without giving up feasibility. Restricted to dim <= 4.
OracleBracket half_norm_oracle(const SpaceSpec& space, const Point& x,
                               double grid_step, double radius,
                               Exec exec = Exec::parallel);

}  // namespace conerad
