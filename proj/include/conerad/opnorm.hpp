#pragma once

#include <optional>
#include <utility>

#include "conerad/companion.hpp"
#include "conerad/map_expr.hpp"
#include "conerad/space.hpp"

namespace conerad {

struct OpNormResult {
  double value = 0.0;
  /// Certified means the value equals the cone operator norm
  /// ||B||+ = sup{||Bx|| : x in X+, ||x|| <= 1}. Uncertified values are
  /// guaranteed lower bounds only (best sampled quotient).
  bool certified = false;
  Point witness;
};

/// Cone operator norm of the map under the given space.
///
/// Certified paths:
///  - sup norm, any order-preserving map: the positive part of the unit
///    ball has top element e = (1,...,1), so ||B||+ = ||B(e)||_inf.
///  - positively linear maps, every norm kind: exact induced formulas
///    (max row sum / max column sum / largest singular value / maximum over
///    the block vertices of the bv positive unit ball).
/// Otherwise the value is the best quotient over simplex vertices, 0/1
/// indicators, seeded random cone samples and hill-climb refinements, and
/// is flagged uncertified.
OpNormResult cone_operator_norm(const MapExpr& map, const SpaceSpec& space,
                                int samples, std::uint64_t seed);

/// Cone operator norm of a nonnegative matrix, exact per norm kind.
double linear_cone_norm(const Matrix& a, NormKind kind, Point* witness = nullptr);

struct HomCheckReport {
  bool homogeneous = true;
  bool order_preserving = true;
  /// First violating pair found: (x, alpha*x) for homogeneity,
  /// (x, y) with x <= y for monotonicity.
  std::optional<std::pair<Point, Point>> counterexample;
};

/// Samples random (alpha, x) pairs and random comparable pairs x <= y and
/// flags violations beyond 1e-9 relative. Built-in map expressions must
/// always pass; the callable form exists so tests can feed broken maps.
HomCheckReport check_homogeneous_order_preserving(const HomMap& map,
                                                  int trials,
                                                  std::uint64_t seed);
HomCheckReport check_homogeneous_order_preserving(const MapExpr& map,
                                                  const SpaceSpec& space,
                                                  int trials,
                                                  std::uint64_t seed);

}  // namespace conerad
