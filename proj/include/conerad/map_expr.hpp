#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "conerad/matrix.hpp"
#include "conerad/point.hpp"
#include "conerad/space.hpp"

namespace conerad {

/// One fertility coefficient beta_{jk} of the rank-structured map, 1-based
/// indices matching the usual population-model notation.
struct BetaEntry {
  int j = 1;
  int k = 1;
  double value = 0.0;
};

/// Survival/promotion/fertility parameters of the rank-structured map
///   B_1(x) = q_1 x_1 + sum beta_{jk} min(x_j, x_k)
///   B_j(x) = max(p_{j-1} x_{j-1}, q_j x_j),  j >= 2.
struct RankParams {
  std::vector<double> q;        // length n
  std::vector<double> p;        // length n-1
  std::vector<BetaEntry> beta;  // sparse, sorted by (j, k)

  int dim() const { return static_cast<int>(q.size()); }
};

class MapExpr;

namespace detail {

struct LinearNode {
  Matrix a;
};
struct TwoSexNode {
  double pf, pm, bf, bm;
};
struct RankNode {
  RankParams params;
};
struct ScaleNode {
  double alpha;
  std::shared_ptr<const MapExpr> inner;
};
struct ComposeNode {
  std::shared_ptr<const MapExpr> outer;
  std::shared_ptr<const MapExpr> inner;
};
struct PowerNode {
  std::shared_ptr<const MapExpr> inner;
  int k;
};
struct PerturbNode {
  std::shared_ptr<const MapExpr> inner;
  double eps;
  Point u;
  SpaceSpec space;
};

using NodeVariant = std::variant<LinearNode, TwoSexNode, RankNode, ScaleNode,
                                 ComposeNode, PowerNode, PerturbNode>;

}  // namespace detail

/// Expression tree of homogeneous order-preserving self-maps of the
/// orthant. All parameters are nonnegative, so every expressible map
/// preserves the cone and the order by construction.
class MapExpr {
 public:
  static MapExpr linear(Matrix a);
  static MapExpr identity(int n);
  static MapExpr two_sex(double pf, double pm, double bf, double bm);
  static MapExpr rank(RankParams params);
  static MapExpr scale(double alpha, MapExpr inner);
  static MapExpr compose(MapExpr outer, MapExpr inner);
  static MapExpr power(MapExpr inner, int k);
  static MapExpr perturb(MapExpr inner, double eps, Point u, SpaceSpec space);

  int dim() const { return dim_; }
  const detail::NodeVariant& node() const { return *node_; }

  /// Evaluate at a cone point. Throws if x is outside the cone or has the
  /// wrong dimension; homogeneous maps are only defined on the cone.
  Point eval(const Point& x) const;

  /// True for maps that are positively linear (Linear leaves combined by
  /// Scale/Compose/Power).
  bool is_positively_linear() const;

  /// Collapse a positively linear expression into its matrix.
  Matrix materialize_linear() const;

 private:
  MapExpr(detail::NodeVariant node, int dim);

  std::shared_ptr<const detail::NodeVariant> node_;
  int dim_ = 0;
};

/// A homogeneous map given as a plain callable, for checkers and reports
/// that must also accept maps built outside the expression tree.
struct HomMap {
  int dim = 0;
  std::function<Point(const Point&)> f;

  Point operator()(const Point& x) const { return f(x); }
};

inline HomMap as_hom_map(const MapExpr& map) {
  return HomMap{map.dim(), [map](const Point& x) { return map.eval(x); }};
}

}  // namespace conerad
