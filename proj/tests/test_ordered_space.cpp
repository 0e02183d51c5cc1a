#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conerad/companion.hpp"
#include "conerad/point.hpp"
#include "conerad/rng.hpp"
#include "conerad/space.hpp"
#include "test_helpers.hpp"

using namespace conerad;
using namespace conerad::testing;

namespace {

const SpaceSpec kBv3{3, NormKind::bv};

SpaceSpec space_of(NormKind k, int n) { return SpaceSpec{n, k}; }

const NormKind kAllKinds[] = {NormKind::sup, NormKind::sum, NormKind::euclid,
                              NormKind::bv};

}  // namespace

TEST_CASE("bv norm on truncations") {
  CHECK(norm(space_of(NormKind::bv, 7), {0, 1, 0, 1, 0, 1, 0}) == 6.0);
  CHECK(norm(kBv3, {1.0, 0.6, 0.1}) == doctest::Approx(1.9).epsilon(1e-15));
  CHECK(norm(kBv3, {0.2, 0.5, 0.9}) == doctest::Approx(0.9).epsilon(1e-15));
  for (NormKind k : kAllKinds) CHECK(norm(k, Point{0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(norm(kBv3, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("alternating/block truncations reproduce the non-normality pair") {
  for (int m = 1; m <= 10; ++m) {
    CHECK(bv_norm(alternating_truncation(m)) == 2.0 * m);
    CHECK(bv_norm(block_truncation(m)) == 2.0);
  }
}

TEST_CASE("lattice operations") {
  OrderRelation rel = leq_meet_join({1, 3}, {2, 2});
  CHECK_FALSE(rel.leq);
  CHECK_FALSE(rel.geq);
  CHECK(rel.meet == Point{1, 2});
  CHECK(rel.join == Point{2, 3});

  CHECK(leq_meet_join({0, 0}, {1, 1}).leq);
  rel = leq_meet_join({1, 2}, {1, 2});
  CHECK(rel.leq);
  CHECK(rel.geq);
  CHECK(rel.meet == Point{1, 2});
  CHECK(rel.join == Point{1, 2});
  CHECK_THROWS_AS(leq_meet_join({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("meet/join bound both arguments") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Point x = rng.signed_point(4, 2.0);
    const Point y = rng.signed_point(4, 2.0);
    OrderRelation rel = leq_meet_join(x, y);
    CHECK(leq(rel.meet, x));
    CHECK(leq(rel.meet, y));
    CHECK(leq(x, rel.join));
    CHECK(leq(y, rel.join));
  }
}

TEST_CASE("companion half-norm closed forms") {
  const Point x{1.0, -2.0, 0.5};
  CHECK(companion_half_norm(space_of(NormKind::sup, 3), x) == 1.0);
  CHECK(companion_half_norm(space_of(NormKind::sum, 3), x) == 1.5);
  CHECK(companion_half_norm(space_of(NormKind::bv, 5), {0, 1, 0, 1, 0}) ==
        1.0);
  // psi vanishes exactly on -X+.
  for (NormKind k : kAllKinds) {
    CHECK(companion_half_norm(k, Point{-1.0, 0.0, -0.25}) == 0.0);
    CHECK(companion_half_norm(k, Point{0.0, 0.0, 0.0}) == 0.0);
  }
}

TEST_CASE("companion norm closed forms") {
  const Point x{1.0, -2.0, 0.5};
  CHECK(companion_norm(space_of(NormKind::sup, 3), x) == 2.0);
  CHECK(companion_norm(space_of(NormKind::bv, 5), {0, 1, 0, 1, 0}) == 1.0);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Point y = rng.cone_point(4, 0.0, 3.0);
    CHECK(companion_norm(NormKind::sup, y) == norm(NormKind::sup, y));
    // bv companion collapses to the sup norm everywhere.
    const Point z = rng.signed_point(4, 3.0);
    CHECK(companion_norm(NormKind::bv, z) ==
          doctest::Approx(norm(NormKind::sup, z)).epsilon(1e-15));
  }
}

TEST_CASE("psi properties on random vectors") {
  Rng rng(23);
  for (NormKind k : kAllKinds) {
    for (int t = 0; t < 300; ++t) {
      const int n = rng.uniform_int(1, 6);
      const Point x = rng.signed_point(n, 2.0);
      const Point y = rng.signed_point(n, 2.0);
      const double px = companion_half_norm(k, x);
      const double py = companion_half_norm(k, y);

      // positively homogeneous
      const double a = rng.uniform(0.0, 3.0);
      CHECK(companion_half_norm(k, scaled(x, a)) ==
            doctest::Approx(a * px).epsilon(1e-12));
      // subadditive
      CHECK(companion_half_norm(k, add(x, y)) <= px + py + 1e-12);
      // dominated by the norm
      CHECK(px <= norm(k, x) + 1e-15);
      // order-preserving: x <= x + nonneg
      Point z = x;
      for (double& c : z) c += rng.uniform(0.0, 1.0);
      CHECK(px <= companion_half_norm(k, z) + 1e-12);
      // psi(x) = 0 iff x <= 0, exactly
      CHECK((px == 0.0) == leq(x, Point(n, 0.0)));

      // companion norm: squeezing x <= y' <= z' gives #y'# <= max(#x#, #z'#)
      Point up = z;
      Point mid = x;
      for (std::size_t i = 0; i < mid.size(); ++i)
        mid[i] = x[i] + 0.5 * (up[i] - x[i]);
      const double cm = companion_norm(k, mid);
      CHECK(cm <= std::max(companion_norm(k, x), companion_norm(k, up)) +
                      1e-12);
    }
  }
}

TEST_CASE("companion norm satisfies the norm axioms") {
  Rng rng(29);
  for (NormKind k : kAllKinds) {
    for (int t = 0; t < 200; ++t) {
      const int n = rng.uniform_int(1, 5);
      const Point x = rng.signed_point(n, 2.0);
      const Point y = rng.signed_point(n, 2.0);
      const double cx = companion_norm(k, x);
      CHECK(companion_norm(k, add(x, y)) <= cx + companion_norm(k, y) + 1e-12);
      const double a = rng.uniform(-2.0, 2.0);
      CHECK(companion_norm(k, scaled(x, a)) ==
            doctest::Approx(std::abs(a) * cx).epsilon(1e-12));
      CHECK(cx <= norm(k, x) + 1e-15);
      if (!is_zero(x)) CHECK(cx > 0.0);
    }
  }
}

TEST_CASE("half-norm oracle brackets the closed forms") {
  // Spec'd cases first.
  {
    const OracleBracket b = half_norm_oracle(space_of(NormKind::sup, 2),
                                             {1.0, -2.0}, 0.01, 2.5);
    CHECK(b.lower >= 0.99);
    CHECK(b.upper <= 1.01);
  }
  {
    const OracleBracket b =
        half_norm_oracle(space_of(NormKind::sum, 2), {0.0, 0.0}, 0.05, 1.0);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 0.0);
  }
  {
    const OracleBracket b =
        half_norm_oracle(space_of(NormKind::sum, 2), {-1.0, -1.0}, 0.01, 2.0);
    CHECK(b.upper == 0.0);
  }
  CHECK_THROWS_AS(
      half_norm_oracle(SpaceSpec{5, NormKind::sup}, Point(5, 1.0), 0.1, 1.0),
      std::invalid_argument);

  Rng rng(101);
  for (NormKind k : kAllKinds) {
    for (int t = 0; t < 25; ++t) {
      const int n = rng.uniform_int(1, 4);
      const Point x = rng.signed_point(n, 1.5);
      const double radius = norm(NormKind::sup, x) + 0.5;
      const double step = radius / 8.0;
      const OracleBracket b =
          half_norm_oracle(space_of(k, n), x, step, radius);
      const double psi = companion_half_norm(k, x);
      CHECK(b.lower <= psi * (1 + 1e-12) + 1e-12);
      CHECK(b.upper >= psi * (1 - 1e-12) - 1e-12);
      CHECK(b.upper - b.lower < 2.0 * step * std::max(norm(k, x), 0.1));
    }
  }
}

TEST_CASE("u-norm") {
  CHECK(u_norm({2, 4}, {1, 2}) == 2.0);
  CHECK(std::isinf(u_norm({1, 0}, {0, 1})));
  CHECK(u_norm({3, 5}, {3, 5}) == 1.0);
  CHECK_THROWS_AS(u_norm({1, 1}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(u_norm({1, 1}, {-1, 1}), std::invalid_argument);

  // -c u <= x <= c u holds, and fails for c shrunk by 1e-9 of scale.
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform_int(1, 5);
    const Point u = rng.cone_point(n, 0.1, 2.0);
    const Point x = rng.signed_point(n, 2.0);
    const double c = u_norm(x, u);
    CHECK(leq(x, scaled(u, c)));
    CHECK(leq(scaled(u, -c), x));
    const double shrunk = c - 1e-9 * std::max(1.0, c);
    bool fails = false;
    for (int j = 0; j < n; ++j)
      if (std::abs(x[j]) > shrunk * u[j]) fails = true;
    CHECK(fails);
  }
}

TEST_CASE("lower gauge") {
  CHECK(lower_gauge({2, 4}, {1, 2}) == 2.0);
  CHECK(lower_gauge({1, 0}, {1, 1}) == 0.0);
  CHECK(lower_gauge({3, 5}, {3, 5}) == 1.0);
  CHECK_THROWS_AS(lower_gauge({1, 1}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(lower_gauge({-1, 1}, {1, 1}), std::invalid_argument);

  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform_int(1, 5);
    const Point u = rng.cone_point(n, 0.05, 2.0);
    const Point x = rng.cone_point(n, 0.0, 3.0);
    const double beta = lower_gauge(x, u);
    CHECK(leq(scaled(u, beta), x));  // beta u <= x
    // maximality: a 1e-9-of-scale bump breaks the inequality somewhere
    const double bumped = beta + 1e-9 * std::max(1.0, beta);
    CHECK_FALSE(leq(scaled(u, bumped), x));
    // [x]_u <= #x# / #u#
    CHECK(beta <= companion_norm(NormKind::sup, x) /
                      companion_norm(NormKind::sup, u) +
                  1e-12);
  }
}

TEST_CASE("normal-point gauge: spec values") {
  GaugeResult g = normal_point_gauge({1, 1, 1});
  CHECK(g.value == 3.0);
  CHECK(g.witness == Point{1, 0, 1});
  g = normal_point_gauge({1, 0, 0});
  CHECK(g.value == 2.0);
  CHECK(g.witness == Point{1, 0, 0});
  CHECK(normal_point_gauge({0, 0, 0}).value == 0.0);
  CHECK_THROWS_AS(normal_point_gauge({1, -1}), std::invalid_argument);
}

TEST_CASE("normal-point gauge: DP equals exhaustive enumeration") {
  Rng rng(31);
  for (int t = 0; t < 250; ++t) {
    const int n = rng.uniform_int(1, 15);
    const Point x = rng.cone_point(n, 0.0, 2.0);
    const GaugeResult g = normal_point_gauge(x);
    CHECK(g.value == gauge_by_enumeration(x));
    CHECK(bv_norm(g.witness) == g.value);  // witness reproduces the value
    CHECK(leq(g.witness, x));
    CHECK(in_cone(g.witness));
  }
}

TEST_CASE("normal-point gauge: bracket and non-normality witness") {
  // The bracket is a statement about summable sequences, so the truncation
  // keeps one explicit trailing zero (otherwise the final drop of the
  // odd/even split is not counted and the lower bound can fail).
  Rng rng(37);
  for (int t = 0; t < 500; ++t) {
    const int n = rng.uniform_int(1, 11);
    Point x = rng.cone_point(n, 0.0, 2.0);
    x.push_back(0.0);
    const double v = normal_point_gauge(x).value;
    const double l1 = norm(NormKind::sum, x);
    CHECK(v >= l1 - 0.5 * x[0] - 1e-12);
    CHECK(v <= 2.0 * l1 + 1e-12);
  }
  // gauge(x^m) / ||u^m||_bv = m exactly: the gauge ratio is unbounded in m.
  for (int m = 1; m <= 10; ++m) {
    const Point xm = alternating_truncation(m);
    const Point um = block_truncation(m);
    CHECK(normal_point_gauge(xm).value / bv_norm(um) == static_cast<double>(m));
    CHECK(leq(xm, um));
  }
}
