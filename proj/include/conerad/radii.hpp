#pragma once

#include <limits>
#include <string>
#include <vector>

#include "conerad/companion.hpp"
#include "conerad/map_expr.hpp"
#include "conerad/space.hpp"

namespace conerad {

/// Per-point Collatz-Wielandt pair at a nonzero cone point x:
///   lower = [B]_x = sup{beta >= 0 : B(x) >= beta x}
///   upper = ||B||_x = inf{lam >= 0 : B(x) <= lam x}   (+infinity possible)
/// lower*x <= B(x) always, and B(x) <= upper*x whenever upper is finite.
struct CwPair {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

CwPair cw_numbers(const MapExpr& map, const Point& x);

/// max over 1 <= n <= N of [B^n]_x^{1/n}: a certified lower bound for the
/// cone spectral radius of a bounded order-preserving homogeneous map,
/// non-decreasing in N.
double eta_lower(const MapExpr& map, const Point& x, int horizon);

struct CertifiedValue {
  double value = 0.0;
  bool certified = false;
};

/// min over 1 <= n <= N of ||B^n||_u^{1/n}, non-increasing in N. Certified
/// as an upper bound for the cone spectral radius when u is strictly
/// positive: the map is then uniformly u-bounded on a finite truncation and
/// every orthant point is a normal point.
CertifiedValue eta_upper(const MapExpr& map, const Point& u, int horizon);

struct GammaEstimate {
  double value = 0.0;
  std::vector<double> log_trace;  // per-step log growth increments
};

/// Finite-horizon estimate of the orbit growth factor
/// gamma_B(x) = limsup ||B^n x||^{1/n}, via per-step renormalization and a
/// mean over the last ceil(N/2) log increments. Returns 0 when the orbit
/// reaches exactly 0.
GammaEstimate local_radius_gamma(const MapExpr& map, const SpaceSpec& space,
                                 const Point& x, int horizon);

struct OpnormRoots {
  std::vector<double> roots;  // ||B^n||_+^{1/n}, n = 1..N
  bool certified = false;     // exact operator norms (sup norm or linear map)
};

/// Table of operator-norm roots. The running minimum of a certified table
/// is an upper bound for the cone spectral radius; uncertified tables are
/// heuristic (growth quotients along the all-ones orbit).
OpnormRoots opnorm_radius(const MapExpr& map, const SpaceSpec& space,
                          int horizon);

enum class EntryKind { lower, upper, gamma, opnorm, comp_lower, comp_upper };

inline const char* to_string(EntryKind k) {
  switch (k) {
    case EntryKind::lower: return "lower";
    case EntryKind::upper: return "upper";
    case EntryKind::gamma: return "gamma";
    case EntryKind::opnorm: return "opnorm";
    case EntryKind::comp_lower: return "comp_lower";
    case EntryKind::comp_upper: return "comp_upper";
  }
  return "?";
}

struct RadiusEntry {
  int n = 0;
  std::string probe_id;
  EntryKind kind = EntryKind::lower;
  double value = 0.0;
  bool certified = false;
};

struct Enclosure {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool lower_certified = false;
  bool upper_certified = false;
};

struct RadiusReport {
  int horizon = 0;
  bool map_certified = false;  // passed the homogeneity/monotonicity check
  std::vector<RadiusEntry> entries;
  Enclosure enclosure;

  /// Columns: n, probe_id, kind, value, certified. Deterministic bytes for
  /// fixed inputs and seed, independent of the execution policy.
  std::string to_csv() const;
  std::string summary() const;
};

/// Assembles the full estimator table for one map: lower Collatz-Wielandt
/// roots over a probe menu (coordinate vectors, prefix indicators, seeded
/// Dirichlet samples, a power-iteration output), upper roots over strictly
/// positive probes (all-ones, geometric profiles, iterate-refined points),
/// growth-factor estimates, operator-norm roots, and the companion-norm
/// variants. The enclosure is [max certified lower, min certified upper].
RadiusReport enclosure_report(const MapExpr& map, const SpaceSpec& space,
                              int horizon, int probes, std::uint64_t seed,
                              Exec exec = Exec::parallel);

/// Same report for a map given as a plain callable. Maps that fail the
/// order-preserving check get heuristic (uncertified) tables and no
/// certified enclosure.
RadiusReport enclosure_report(const HomMap& fn, const SpaceSpec& space,
                              int horizon, int probes, std::uint64_t seed,
                              Exec exec = Exec::parallel);

}  // namespace conerad
