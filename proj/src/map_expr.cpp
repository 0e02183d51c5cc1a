#include "conerad/map_expr.hpp"

#include <algorithm>

#include "conerad/companion.hpp"

namespace conerad {

namespace {

using namespace detail;

void require_nonneg(double v, const char* what) {
  require(v >= 0.0, std::string(what) + " must be nonnegative");
}

std::shared_ptr<const MapExpr> box(MapExpr m) {
  return std::make_shared<const MapExpr>(std::move(m));
}

}  // namespace

MapExpr::MapExpr(detail::NodeVariant node, int dim)
    : node_(std::make_shared<const detail::NodeVariant>(std::move(node))),
      dim_(dim) {}

MapExpr MapExpr::linear(Matrix a) {
  require(a.dim() >= 1, "linear: empty matrix");
  require(a.nonnegative(), "linear: matrix must be nonnegative");
  const int n = static_cast<int>(a.dim());
  return MapExpr(LinearNode{std::move(a)}, n);
}

MapExpr MapExpr::identity(int n) {
  require(n >= 1, "identity: dimension must be positive");
  return linear(Matrix::identity(static_cast<std::size_t>(n)));
}

MapExpr MapExpr::two_sex(double pf, double pm, double bf, double bm) {
  require_nonneg(pf, "two_sex: pf");
  require_nonneg(pm, "two_sex: pm");
  require_nonneg(bf, "two_sex: bf");
  require_nonneg(bm, "two_sex: bm");
  return MapExpr(TwoSexNode{pf, pm, bf, bm}, 2);
}

MapExpr MapExpr::rank(RankParams params) {
  const int n = params.dim();
  require(n >= 1, "rank: empty configuration");
  require(static_cast<int>(params.p.size()) == n - 1,
          "rank: p must have length n-1");
  for (double v : params.q) require_nonneg(v, "rank: q");
  for (double v : params.p) require_nonneg(v, "rank: p");
  for (const BetaEntry& b : params.beta) {
    require(b.j >= 1 && b.j <= n && b.k >= 1 && b.k <= n,
            "rank: beta index out of range");
    require_nonneg(b.value, "rank: beta");
  }
  std::sort(params.beta.begin(), params.beta.end(),
            [](const BetaEntry& a, const BetaEntry& b) {
              return a.j != b.j ? a.j < b.j : a.k < b.k;
            });
  return MapExpr(RankNode{std::move(params)}, n);
}

MapExpr MapExpr::scale(double alpha, MapExpr inner) {
  require_nonneg(alpha, "scale: alpha");
  const int n = inner.dim();
  return MapExpr(ScaleNode{alpha, box(std::move(inner))}, n);
}

MapExpr MapExpr::compose(MapExpr outer, MapExpr inner) {
  require(outer.dim() == inner.dim(), "compose: dimension mismatch");
  const int n = inner.dim();
  return MapExpr(ComposeNode{box(std::move(outer)), box(std::move(inner))}, n);
}

MapExpr MapExpr::power(MapExpr inner, int k) {
  require(k >= 1, "power: exponent must be positive");
  const int n = inner.dim();
  return MapExpr(PowerNode{box(std::move(inner)), k}, n);
}

MapExpr MapExpr::perturb(MapExpr inner, double eps, Point u, SpaceSpec space) {
  require(eps > 0.0, "perturb: eps must be positive");
  require(space.dim == inner.dim(), "perturb: space dimension mismatch");
  require_dim(u, static_cast<std::size_t>(inner.dim()), "perturb: u");
  require(in_cone(u) && !is_zero(u), "perturb: u must be a nonzero cone point");
  const int n = inner.dim();
  return MapExpr(PerturbNode{box(std::move(inner)), eps, std::move(u), space},
                 n);
}

namespace {

Point eval_node(const NodeVariant& node, const Point& x);

Point eval_rank(const RankParams& par, const Point& x) {
  const std::size_t n = x.size();
  Point y(n, 0.0);
  double first = par.q[0] * x[0];
  for (const BetaEntry& b : par.beta)
    first += b.value * std::min(x[b.j - 1], x[b.k - 1]);
  y[0] = first;
  for (std::size_t j = 1; j < n; ++j)
    y[j] = std::max(par.p[j - 1] * x[j - 1], par.q[j] * x[j]);
  return y;
}

Point eval_node(const NodeVariant& node, const Point& x) {
  return std::visit(
      [&](const auto& n) -> Point {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LinearNode>) {
          return n.a.apply(x);
        } else if constexpr (std::is_same_v<T, TwoSexNode>) {
          const double f = x[0], m = x[1];
          const double t = f + m;
          const double h = t > 0.0 ? f * m / t : 0.0;  // extended by 0 at 0
          return Point{n.pf * f + n.bf * h, n.pm * m + n.bm * h};
        } else if constexpr (std::is_same_v<T, RankNode>) {
          return eval_rank(n.params, x);
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return scaled(n.inner->eval(x), n.alpha);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return n.outer->eval(n.inner->eval(x));
        } else if constexpr (std::is_same_v<T, PowerNode>) {
          Point y = x;
          for (int i = 0; i < n.k; ++i) y = n.inner->eval(y);
          return y;
        } else {
          static_assert(std::is_same_v<T, PerturbNode>);
          Point y = n.inner->eval(x);
          const double psi = companion_half_norm(n.space, x);
          for (std::size_t j = 0; j < y.size(); ++j)
            y[j] += n.eps * psi * n.u[j];
          return y;
        }
      },
      node);
}

}  // namespace

Point MapExpr::eval(const Point& x) const {
  require_dim(x, static_cast<std::size_t>(dim_), "MapExpr::eval");
  require(in_cone(x), "MapExpr::eval: x must lie in the cone");
  return eval_node(*node_, x);
}

bool MapExpr::is_positively_linear() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, detail::LinearNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, detail::ScaleNode>) {
          return n.inner->is_positively_linear();
        } else if constexpr (std::is_same_v<T, detail::ComposeNode>) {
          return n.outer->is_positively_linear() &&
                 n.inner->is_positively_linear();
        } else if constexpr (std::is_same_v<T, detail::PowerNode>) {
          return n.inner->is_positively_linear();
        } else {
          return false;
        }
      },
      *node_);
}

Matrix MapExpr::materialize_linear() const {
  require(is_positively_linear(),
          "materialize_linear: map is not positively linear");
  return std::visit(
      [this](const auto& n) -> Matrix {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, detail::LinearNode>) {
          return n.a;
        } else if constexpr (std::is_same_v<T, detail::ScaleNode>) {
          return n.inner->materialize_linear().scaled(n.alpha);
        } else if constexpr (std::is_same_v<T, detail::ComposeNode>) {
          return n.outer->materialize_linear().multiply(
              n.inner->materialize_linear());
        } else if constexpr (std::is_same_v<T, detail::PowerNode>) {
          Matrix base = n.inner->materialize_linear();
          Matrix acc = Matrix::identity(base.dim());
          for (int i = 0; i < n.k; ++i) acc = acc.multiply(base);
          return acc;
        } else {
          throw std::logic_error("materialize_linear: unreachable");
        }
      },
      *node_);
}

}  // namespace conerad
