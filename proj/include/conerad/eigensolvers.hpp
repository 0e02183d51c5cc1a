#pragma once

#include <string>
#include <vector>

#include "conerad/companion.hpp"
#include "conerad/map_expr.hpp"
#include "conerad/space.hpp"

namespace conerad {

enum class SolveStatus { converged, max_iter, degenerate_zero };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::degenerate_zero: return "degenerate_zero";
  }
  return "?";
}

struct SolveResult {
  double r = 0.0;
  Point v;
  /// ||B(v) - r v|| / ||v|| for the equality solvers; for the lower solvers
  /// the componentwise deficit of B(v) >= r v, scaled by ||v||.
  double residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::converged;
};

/// Normalized power iteration y <- B(y)/||B(y)||. Converged when successive
/// normalized iterates drift less than tol in the companion norm and the
/// eigen-residual is below tol. Period-2 oscillation (permutation-like
/// linear maps) is detected and resolved by averaging over the cycle.
SolveResult power_iterate(const MapExpr& map, const SpaceSpec& space,
                          const Point& x0, double tol, int max_iter);

/// Cyclic-sum construction for positively linear maps: from an m-periodic
/// eigenvector B^m(w) = r^m w builds v = sum_{j<m} r^{-j} B^j(w) with
/// B(v) = r v.
SolveResult cyclic_sum_eigenvector(const MapExpr& map, const Point& w, int m,
                                   double r, double tol);

/// Lattice variant for order-preserving homogeneous maps: from
/// B^m(w) >= r^m w builds v = max_{j<m} r^{-j} B^j(w) with B(v) >= r v.
SolveResult sup_lower_eigenvector(const MapExpr& map, const Point& w, int m,
                                  double r, double tol);

/// Meet iteration x_k = ((1/r) B(x_{k-1}) + 2^{-k} u) /\ u from x_0 = u.
/// The iterates decrease; a limit that stays away from zero is a lower
/// eigenvector for level r, collapse to zero signals r above the radius.
SolveResult meet_iteration_lower(const MapExpr& map, const SpaceSpec& space,
                                 const Point& u, double r, int K);

/// Bisection on the meet-iteration collapse threshold. The iteration count
/// is scaled with the requested resolution: distinguishing survival at r
/// from collapse at r + tol_r needs on the order of r/tol_r steps.
double eta_via_meet_bisection(const MapExpr& map, const SpaceSpec& space,
                              const Point& u, double r_lo, double r_hi,
                              double tol_r, int K);

struct HomotopyStep {
  int k = 0;
  double epsilon = 0.0;
  double r = 0.0;
  double residual = 0.0;
};

struct HomotopyResult {
  SolveResult result;
  std::vector<HomotopyStep> trace;
  std::string trace_csv() const;
};

/// Solves the eps-perturbed problems B(x) + eps*psi(x)*u = r x along the
/// geometric schedule eps_k = eps0 * 2^-k, warm-starting each solve at the
/// previous eigenvector. The r_k trace decreases toward the cone spectral
/// radius of the unperturbed map.
HomotopyResult epsilon_homotopy(const MapExpr& map, const SpaceSpec& space,
                                const Point& u, double eps0, int steps,
                                double tol);

}  // namespace conerad
