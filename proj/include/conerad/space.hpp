#pragma once

#include <cmath>
#include <string>

#include "conerad/point.hpp"

namespace conerad {

/// Norm selector of a space. All spaces are finite truncations of the
/// corresponding sequence spaces; the cone is always the nonnegative
/// orthant.
enum class NormKind { sup, sum, euclid, bv };

struct SpaceSpec {
  int dim = 0;
  NormKind kind = NormKind::sup;
};

inline const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::sup: return "sup";
    case NormKind::sum: return "sum";
    case NormKind::euclid: return "euclid";
    case NormKind::bv: return "bv";
  }
  return "?";
}

inline NormKind norm_kind_from_string(const std::string& s) {
  if (s == "sup") return NormKind::sup;
  if (s == "sum") return NormKind::sum;
  if (s == "euclid") return NormKind::euclid;
  if (s == "bv") return NormKind::bv;
  throw std::invalid_argument("unknown norm kind: " + s);
}

/// Variation norm on a truncation: |x_1| + sum |x_{j+1} - x_j|.
inline double bv_norm(const Point& x) {
  if (x.empty()) return 0.0;
  double v = std::abs(x[0]);
  for (std::size_t j = 0; j + 1 < x.size(); ++j) v += std::abs(x[j + 1] - x[j]);
  return v;
}

inline double norm(NormKind kind, const Point& x) {
  switch (kind) {
    case NormKind::sup: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    case NormKind::sum: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    case NormKind::euclid: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case NormKind::bv:
      return bv_norm(x);
  }
  return 0.0;
}

inline double norm(const SpaceSpec& space, const Point& x) {
  require_dim(x, static_cast<std::size_t>(space.dim), "norm");
  return norm(space.kind, x);
}

}  // namespace conerad
