#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

/// Dense row-major matrix over a ring-like value type. The stored zero
/// prototype carries the coefficient ring so that empty products and fresh
/// entries are well-typed.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T zero)
      : r_(rows), c_(cols), a_(rows * cols, zero), zero_(std::move(zero)) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const T& zero() const { return zero_; }
  bool is_square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v;
    v.reserve(r_);
    for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(c_, r_, zero_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> m(r_, c_, f(zero_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
    Matrix m(rows, cols, zero_);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, ErrorKind::PreconditionViolated, "matrix shape mismatch");
    for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, ErrorKind::PreconditionViolated, "matrix shape mismatch");
    for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.c_ == b.r_, ErrorKind::PreconditionViolated, "matrix shape mismatch");
    Matrix m(a.r_, b.c_, a.zero_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }
  /// Scalar multiplication from the left, entry by entry.
  template <class S>
  Matrix scaled(const S& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = s * x;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
  T zero_{};
};

}  // namespace drinfeld
