#pragma once

#include <cstddef>
#include <vector>

#include "conerad/point.hpp"

namespace conerad {

/// Small dense square matrix, row major. Hand rolled so the arithmetic
/// order (and therefore the emitted CSV bytes) is fixed.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  Matrix(std::size_t n, std::vector<double> entries)
      : n_(n), a_(std::move(entries)) {
    require(a_.size() == n_ * n_, "Matrix: entry count must be n*n");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  Point apply(const Point& x) const {
    require_dim(x, n_, "Matrix::apply");
    Point y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  Matrix multiply(const Matrix& other) const {
    require(n_ == other.n_, "Matrix::multiply: dimension mismatch");
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const double v = a_[i * n_ + k];
        if (v == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j)
          r(i, j) += v * other(k, j);
      }
    return r;
  }

  Matrix transpose() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = a_[i * n_ + j];
    return r;
  }

  Matrix scaled(double c) const {
    Matrix r = *this;
    for (double& v : r.a_) v *= c;
    return r;
  }

  bool nonnegative() const {
    for (double v : a_)
      if (!(v >= 0.0)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

}  // namespace conerad
