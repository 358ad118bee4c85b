#pragma once

// Matrices over k[t]: determinants, adjugates, Smith normal form, and the
// k-linear structure of cokernels read off from it.

#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/linalg.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

using PolyMatrix = Matrix<Poly>;

inline PolyMatrix poly_zero(const Ring& R, std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, cols, Poly(R));
}

inline PolyMatrix poly_identity(const Ring& R, std::size_t n) {
  return PolyMatrix::identity(n, Poly(R), Poly::constant(R.one()));
}

/// Entrywise coefficient Frobenius x -> x^{(q)}.
inline PolyMatrix frob(const PolyMatrix& m, std::size_t times = 1) {
  return m.map([times](const Poly& x) { return x.frob(times); });
}

inline PolyMatrix scalar_poly_matrix(const ElemMatrix& m) {
  return m.map([](const Elem& x) { return Poly::constant(x); });
}

/// Scalar multiple p·M.
inline PolyMatrix times(const Poly& p, const PolyMatrix& m) {
  return m.map([&p](const Poly& x) { return p * x; });
}

inline std::vector<Poly> mat_vec(const PolyMatrix& m, const std::vector<Poly>& x) {
  std::vector<Poly> y(m.rows(), m.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !x[j].is_zero()) y[i] += m(i, j) * x[j];
  return y;
}

inline int max_degree(const PolyMatrix& m) {
  int d = -1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  return d;
}

/// Fraction-free (Bareiss) determinant over k[t].
inline Poly det(const PolyMatrix& a) {
  require(a.is_square(), ErrorKind::PreconditionViolated, "determinant of a non-square matrix");
  const Ring& R = a.zero().ring();
  const std::size_t n = a.rows();
  if (n == 0) return Poly::constant(R.one());
  PolyMatrix m = a;
  Poly prev = Poly::constant(R.one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t sel = k + 1;
      while (sel < n && m(sel, k).is_zero()) ++sel;
      if (sel == n) return Poly(R);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Poly(R);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

inline PolyMatrix minor_matrix(const PolyMatrix& a, std::size_t row, std::size_t col) {
  const std::size_t n = a.rows();
  PolyMatrix m = poly_zero(a.zero().ring(), n - 1, n - 1);
  for (std::size_t i = 0, ii = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, jj = 0; j < n; ++j) {
      if (j == col) continue;
      m(ii, jj++) = a(i, j);
    }
    ++ii;
  }
  return m;
}

/// adj(A) with A·adj(A) = adj(A)·A = det(A)·I.
inline PolyMatrix adjugate(const PolyMatrix& a) {
  require(a.is_square(), ErrorKind::PreconditionViolated, "adjugate of a non-square matrix");
  const Ring& R = a.zero().ring();
  const std::size_t n = a.rows();
  if (n == 1) return poly_identity(R, 1);
  PolyMatrix adj = poly_zero(R, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly c = det(minor_matrix(a, j, i));
      adj(i, j) = ((i + j) % 2) ? -c : c;
    }
  return adj;
}

struct SmithForm {
  PolyMatrix U, D, V;      // U·A·V = D
  PolyMatrix U_inv, V_inv;
  /// Diagonal entries d_1 | d_2 | ..., monic, zeros last.
  std::vector<Poly> diagonal() const {
    std::vector<Poly> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline void swap_rows(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
/// row[dst] += f * row[src]
inline void add_row(PolyMatrix& m, std::size_t dst, std::size_t src, const Poly& f) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!m(src, j).is_zero()) m(dst, j) += f * m(src, j);
}
inline void add_col(PolyMatrix& m, std::size_t dst, std::size_t src, const Poly& f) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m(i, src).is_zero()) m(i, dst) += m(i, src) * f;
}

}  // namespace detail

/// Smith normal form U·A·V = D over k[t]. Pivot rule: among the nonzero
/// entries of the active block, minimal degree, ties broken by leftmost
/// column and then topmost row; pivots are made monic.
inline SmithForm smith_normal_form(const PolyMatrix& A) {
  using namespace detail;
  const Ring& R = A.zero().ring();
  require(R.is_field(), ErrorKind::UnsupportedBase, "Smith normal form needs a field");
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm s{poly_identity(R, m), A, poly_identity(R, n), poly_identity(R, m), poly_identity(R, n)};
  PolyMatrix& D = s.D;
  // Row op on D is mirrored on U (left) and inversely on U_inv (right);
  // column ops likewise on V and V_inv.
  auto row_swap = [&](std::size_t a, std::size_t b) {
    swap_rows(D, a, b);
    swap_rows(s.U, a, b);
    swap_cols(s.U_inv, a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    swap_cols(D, a, b);
    swap_cols(s.V, a, b);
    swap_rows(s.V_inv, a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Poly& f) {
    add_row(D, dst, src, f);
    add_row(s.U, dst, src, f);
    add_col(s.U_inv, src, dst, -f);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Poly& f) {
    add_col(D, dst, src, f);
    add_col(s.V, dst, src, f);
    add_row(s.V_inv, src, dst, -f);
  };
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    for (;;) {
      // choose the pivot
      int best = -1;
      std::size_t bi = 0, bj = 0;
      for (std::size_t j = k; j < n; ++j)
        for (std::size_t i = k; i < m; ++i) {
          int d = D(i, j).degree();
          if (d < 0) continue;
          if (best < 0 || d < best) {
            best = d;
            bi = i;
            bj = j;
          }
        }
      if (best < 0) return s;
      row_swap(k, bi);
      col_swap(k, bj);
      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (D(i, k).is_zero()) continue;
        auto [q, r] = D(i, k).divmod(D(k, k));
        row_add(i, k, -q);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (D(k, j).is_zero()) continue;
        auto [q, r] = D(k, j).divmod(D(k, k));
        col_add(j, k, -q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      bool divides_all = true;
      for (std::size_t i = k + 1; i < m && divides_all; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (!(D(i, j) % D(k, k)).is_zero()) {
            row_add(k, i, Poly::constant(R.one()));
            divides_all = false;
            break;
          }
      if (!divides_all) continue;
      break;
    }
    Elem lead = D(k, k).lead();
    if (!lead.is_one()) {
      Elem inv = lead.inverse();
      for (std::size_t j = 0; j < n; ++j) D(k, j) = D(k, j) * inv;
      for (std::size_t j = 0; j < m; ++j) s.U(k, j) = s.U(k, j) * inv;
      for (std::size_t i = 0; i < m; ++i) s.U_inv(i, k) = s.U_inv(i, k) * lead;
    }
  }
  return s;
}

/// k-linear model of coker(A) = k[t]^r / A·k[t]^r for square nonsingular A.
/// In the Smith coordinates y = U·x the cokernel is the direct sum of
/// k[t]/(d_i); its k-basis is t^j e_i for j < deg d_i, ordered by i then j.
class Cokernel {
 public:
  explicit Cokernel(const PolyMatrix& A) : A_(A), s_(smith_normal_form(A)) {
    const Ring& R = A.zero().ring();
    require(A.is_square(), ErrorKind::PreconditionViolated, "cokernel model needs a square matrix");
    for (const auto& d : s_.diagonal()) require(!d.is_zero(), ErrorKind::NotAnIsogeny, "matrix is singular");
    for (std::size_t i = 0; i < A.rows(); ++i) {
      std::size_t deg = static_cast<std::size_t>(s_.D(i, i).degree());
      for (std::size_t j = 0; j < deg; ++j) basis_.push_back({i, j});
    }
    ring_ = R;
  }

  std::size_t dim() const { return basis_.size(); }
  const SmithForm& smith() const { return s_; }
  const Ring& ring() const { return ring_; }

  /// k-coordinates of the class of x.
  std::vector<Elem> coords(const std::vector<Poly>& x) const {
    auto y = mat_vec(s_.U, x);
    std::vector<Elem> out;
    out.reserve(basis_.size());
    std::vector<Poly> red(y.size(), Poly(ring_));
    for (std::size_t i = 0; i < y.size(); ++i)
      if (s_.D(i, i).degree() > 0) red[i] = y[i] % s_.D(i, i);
    for (const auto& [i, j] : basis_) out.push_back(red[i].coeff(j));
    return out;
  }

  /// A representative in k[t]^r of the class with the given coordinates.
  std::vector<Poly> lift(const std::vector<Elem>& c) const {
    std::vector<Poly> y(A_.rows(), Poly(ring_));
    for (std::size_t b = 0; b < basis_.size(); ++b)
      if (!c[b].is_zero()) y[basis_[b].first] += Poly::monomial(c[b], basis_[b].second);
    return mat_vec(s_.U_inv, y);
  }

  /// The unique y with A·y = v, or nullopt when v is not in the image.
  std::optional<std::vector<Poly>> solve(const std::vector<Poly>& v) const {
    auto y = mat_vec(s_.U, v);
    for (std::size_t i = 0; i < y.size(); ++i) {
      auto [q, r] = y[i].divmod(s_.D(i, i));
      if (!r.is_zero()) return std::nullopt;
      y[i] = q;
    }
    return mat_vec(s_.V, y);
  }

  /// Matrix over k of the k-linear map induced by multiplication by t.
  ElemMatrix t_action() const {
    ElemMatrix m = zero_matrix(ring_, dim(), dim());
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      std::vector<Elem> e(dim(), ring_.zero());
      e[b] = ring_.one();
      auto x = lift(e);
      for (auto& p : x) p = p * Poly::var(ring_);
      m.set_column(b, coords(x));
    }
    return m;
  }

 private:
  PolyMatrix A_;
  SmithForm s_;
  Ring ring_;
  std::vector<std::pair<std::size_t, std::size_t>> basis_;
};

}  // namespace drinfeld
