#pragma once

// Linear algebra over coefficient rings: fields for rank/kernel/solve, and
// local rings for inversion (a matrix over a local ring is invertible iff
// its residue is, so unit pivots always exist).

#include <optional>
#include <vector>

#include "drinfeld/matrix.hpp"
#include "drinfeld/ring.hpp"

namespace drinfeld {

using ElemMatrix = Matrix<Elem>;

inline ElemMatrix zero_matrix(const Ring& R, std::size_t rows, std::size_t cols) {
  return ElemMatrix(rows, cols, R.zero());
}

inline ElemMatrix identity_matrix(const Ring& R, std::size_t n) { return ElemMatrix::identity(n, R.zero(), R.one()); }

/// Entrywise q-Frobenius.
inline ElemMatrix frob(const ElemMatrix& m, std::size_t times = 1) {
  return m.map([times](const Elem& x) { return x.frob(times); });
}

inline ElemMatrix frob_inverse(const ElemMatrix& m, std::size_t times = 1) {
  return m.map([times](const Elem& x) { return x.frob_inverse(times); });
}

namespace detail {

struct Echelon {
  ElemMatrix m;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over a field.
inline Echelon rref(ElemMatrix m) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Elem inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Elem f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(piv)};
}

}  // namespace detail

inline std::size_t rank(const ElemMatrix& m) {
  require(m.zero().ring().is_field(), ErrorKind::UnsupportedBase, "rank needs a field");
  return detail::rref(m).pivots.size();
}

/// Basis of {x : m x = 0} over a field, one vector per free column.
inline std::vector<std::vector<Elem>> kernel(const ElemMatrix& m) {
  const Ring& R = m.zero().ring();
  auto e = detail::rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : e.pivots) is_piv[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Elem> v(m.cols(), R.zero());
    v[f] = R.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with m x = b over a field.
inline std::optional<std::vector<Elem>> solve(const ElemMatrix& m, const std::vector<Elem>& b) {
  const Ring& R = m.zero().ring();
  ElemMatrix aug(m.rows(), m.cols() + 1, R.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = detail::rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<Elem> x(m.cols(), R.zero());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.m(r, m.cols());
  return x;
}

/// Inverse over a field or local ring; nullopt when singular.
inline std::optional<ElemMatrix> inverse(const ElemMatrix& a) {
  require(a.is_square(), ErrorKind::PreconditionViolated, "inverse of a non-square matrix");
  const Ring& R = a.zero().ring();
  const std::size_t n = a.rows();
  ElemMatrix m = a, inv = identity_matrix(R, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && !m(sel, col).is_unit()) ++sel;
    if (sel == n) return std::nullopt;
    if (sel != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(sel, j), m(col, j));
        std::swap(inv(sel, j), inv(col, j));
      }
    Elem p = m(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = m(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col).is_zero()) continue;
      Elem f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Determinant by cofactor-free elimination over a field; Laplace expansion
/// over non-fields.
inline Elem det(const ElemMatrix& a) {
  require(a.is_square(), ErrorKind::PreconditionViolated, "determinant of a non-square matrix");
  const Ring& R = a.zero().ring();
  const std::size_t n = a.rows();
  if (n == 0) return R.one();
  if (!R.is_field()) {
    if (n == 1) return a(0, 0);
    Elem acc = R.zero();
    for (std::size_t j = 0; j < n; ++j) {
      ElemMatrix minor(n - 1, n - 1, R.zero());
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0, kk = 0; k < n; ++k)
          if (k != j) minor(i - 1, kk++) = a(i, k);
      Elem term = a(0, j) * det(minor);
      acc = (j % 2) ? acc - term : acc + term;
    }
    return acc;
  }
  ElemMatrix m = a;
  Elem d = R.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col).is_zero()) ++sel;
    if (sel == n) return R.zero();
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    Elem p = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Elem f = m(i, col) * p;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return d;
}

inline std::vector<Elem> mat_vec(const ElemMatrix& m, const std::vector<Elem>& x) {
  std::vector<Elem> y(m.rows(), m.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

/// Lifts a matrix into a ring containing its coefficient ring.
inline ElemMatrix lift(const ElemMatrix& m, const Ring& S) {
  return m.map([&S](const Elem& x) { return lift_to(S, x); });
}

}  // namespace drinfeld
