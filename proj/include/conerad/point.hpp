#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace conerad {

/// A point of a finite-dimensional ordered vector space, stored as plain
/// coordinates. The order is the componentwise one induced by the
/// nonnegative orthant.
using Point = std::vector<double>;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void require_dim(const Point& x, std::size_t n, const char* what) {
  if (x.size() != n)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(n) + ")");
}

inline void require_same_dim(const Point& x, const Point& y, const char* what) {
  require_dim(y, x.size(), what);
}

inline bool all_finite(const Point& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

/// Cone membership is sign checking and therefore exact: no tolerance.
inline bool in_cone(const Point& x) {
  for (double v : x)
    if (!(v >= 0.0)) return false;
  return true;
}

inline bool is_zero(const Point& x) {
  for (double v : x)
    if (v != 0.0) return false;
  return true;
}

inline bool leq(const Point& x, const Point& y) {
  require_same_dim(x, y, "leq");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(y[i] - x[i] >= 0.0)) return false;
  return true;
}

struct OrderRelation {
  bool leq = false;
  bool geq = false;
  Point meet;
  Point join;
};

/// Componentwise lattice operations on the orthant-ordered space.
inline OrderRelation leq_meet_join(const Point& x, const Point& y) {
  require_same_dim(x, y, "leq_meet_join");
  OrderRelation rel;
  rel.leq = true;
  rel.geq = true;
  rel.meet.resize(x.size());
  rel.join.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - x[i];
    if (!(d >= 0.0)) rel.leq = false;
    if (!(d <= 0.0)) rel.geq = false;
    rel.meet[i] = std::min(x[i], y[i]);
    rel.join[i] = std::max(x[i], y[i]);
  }
  return rel;
}

inline Point meet(const Point& x, const Point& y) {
  require_same_dim(x, y, "meet");
  Point m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = std::min(x[i], y[i]);
  return m;
}

inline Point join(const Point& x, const Point& y) {
  require_same_dim(x, y, "join");
  Point m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = std::max(x[i], y[i]);
  return m;
}

inline Point add(const Point& x, const Point& y) {
  require_same_dim(x, y, "add");
  Point z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

inline Point sub(const Point& x, const Point& y) {
  require_same_dim(x, y, "sub");
  Point z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

inline Point scaled(const Point& x, double a) {
  Point z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = a * x[i];
  return z;
}

inline Point negated(const Point& x) { return scaled(x, -1.0); }

inline Point ones(std::size_t n) { return Point(n, 1.0); }

inline Point unit_vector(std::size_t n, std::size_t j) {
  Point e(n, 0.0);
  e.at(j) = 1.0;
  return e;
}

/// Indicator of the first m coordinates, 1-based count.
inline Point prefix_indicator(std::size_t n, std::size_t m) {
  Point x(n, 0.0);
  for (std::size_t i = 0; i < m && i < n; ++i) x[i] = 1.0;
  return x;
}

}  // namespace conerad
