#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace drinfeld {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u32 add_mod(u32 a, u32 b, u32 p) {
  u64 s = static_cast<u64>(a) + b;
  return static_cast<u32>(s >= p ? s - p : s);
}
inline u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : static_cast<u32>(static_cast<u64>(a) + p - b); }
inline u32 neg_mod(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
inline u32 mul_mod(u32 a, u32 b, u32 p) { return static_cast<u32>(static_cast<u64>(a) * b % p); }

inline u32 pow_mod(u32 a, u64 e, u32 p) {
  u64 r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

/// Inverse in F_p; `a` must be nonzero mod p.
inline u32 inv_mod(u32 a, u32 p) { return pow_mod(a, p - 2, p); }

inline bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Dense matrix over the prime field F_p. Used for every F_p-linear problem
/// (Frobenius fixed points, kernels of q-linearized operators, restriction
/// of scalars), where the unknowns are F_p-coordinates.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, u32 p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u32 p() const { return p_; }

  u32& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  u32 operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  void set_column(std::size_t j, const std::vector<u32>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  /// In-place reduced row echelon form. Returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
      u32 inv = inv_mod((*this)(row, col), p_);
      for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) = mul_mod((*this)(row, j), inv, p_);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row) continue;
        u32 f = (*this)(i, col);
        if (f == 0) continue;
        for (std::size_t j = col; j < cols_; ++j)
          (*this)(i, j) = sub_mod((*this)(i, j), mul_mod(f, (*this)(row, j), p_), p_);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    FpMatrix m = *this;
    return m.rref().size();
  }

  /// Basis of the right kernel {x : A x = 0}; one vector per free column,
  /// in increasing column order.
  std::vector<std::vector<u32>> kernel() const {
    FpMatrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<u32>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<u32> v(cols_, 0);
      v[f] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = neg_mod(m(r, f), p_);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Some x with A x = b, or nullopt when b is not in the column space.
  std::optional<std::vector<u32>> solve(const std::vector<u32>& b) const {
    FpMatrix aug(rows_, cols_ + 1, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    std::vector<u32> x(cols_, 0);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, cols_);
    return x;
  }

  std::vector<u32> apply(const std::vector<u32>& x) const {
    std::vector<u32> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      u64 acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = (acc + static_cast<u64>((*this)(i, j)) * x[j]) % p_;
      y[i] = static_cast<u32>(acc);
    }
    return y;
  }

 private:
  std::size_t rows_, cols_;
  u32 p_;
  std::vector<u32> a_;
};

/// Incrementally maintained F_p-span; answers membership and grows by
/// independent vectors. Kept in echelon form keyed by pivot position.
class FpSpan {
 public:
  FpSpan(std::size_t dim, u32 p) : dim_(dim), p_(p) {}

  std::size_t dimension() const { return rows_.size(); }

  /// Reduces v against the current basis; returns the residue.
  std::vector<u32> reduce(std::vector<u32> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      u32 f = v[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] = sub_mod(v[j], mul_mod(f, rows_[r][j], p_), p_);
    }
    return v;
  }

  bool contains(const std::vector<u32>& v) const {
    auto r = reduce(v);
    for (u32 x : r)
      if (x) return false;
    return true;
  }

  /// Adds v if independent; returns whether the span grew.
  bool insert(const std::vector<u32>& v) {
    auto r = reduce(v);
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
      if (r[j]) {
        piv = j;
        break;
      }
    if (piv == dim_) return false;
    u32 inv = inv_mod(r[piv], p_);
    for (auto& x : r) x = mul_mod(x, inv, p_);
    for (auto& row : rows_) {
      u32 f = row[piv];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] = sub_mod(row[j], mul_mod(f, r[j], p_), p_);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::size_t dim_;
  u32 p_;
  std::vector<std::vector<u32>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace drinfeld
