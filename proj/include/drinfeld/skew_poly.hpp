#pragma once

// The twisted polynomial ring R{tau} with tau*b = b^q*tau, and matrices
// over it. These model F_q-linear endomorphisms of G_a^d.

#include <string>
#include <utility>
#include <vector>

#include "drinfeld/linalg.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

/// Degree reported for the zero skew polynomial.
inline constexpr int kZeroDegree = -1;

class SkewPoly {
 public:
  SkewPoly() = default;
  explicit SkewPoly(Ring R) : R_(std::move(R)) {}
  SkewPoly(Ring R, std::vector<Elem> c) : R_(std::move(R)), c_(std::move(c)) { trim(); }

  static SkewPoly constant(const Elem& c) { return SkewPoly(c.ring(), {c}); }
  static SkewPoly monomial(const Elem& c, std::size_t n) {
    std::vector<Elem> v(n + 1, c.ring().zero());
    v[n] = c;
    return SkewPoly(c.ring(), std::move(v));
  }
  static SkewPoly tau(const Ring& R, std::size_t n = 1) { return monomial(R.one(), n); }

  const Ring& ring() const { return R_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R_.zero(); }
  const Elem& lead() const { return c_.back(); }

  SkewPoly operator-() const {
    SkewPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  SkewPoly& operator+=(const SkewPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  SkewPoly& operator-=(const SkewPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend SkewPoly operator+(SkewPoly a, const SkewPoly& b) { return a += b; }
  friend SkewPoly operator-(SkewPoly a, const SkewPoly& b) { return a -= b; }

  /// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^{q^i} tau^{i+j}.
  friend SkewPoly operator*(const SkewPoly& a, const SkewPoly& b) {
    if (a.is_zero() || b.is_zero()) return SkewPoly(a.R_);
    std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, a.R_.zero());
    std::vector<Elem> tw = b.c_;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (i > 0)
        for (auto& x : tw) x = x.frob();
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < tw.size(); ++j) c[i + j] += a.c_[i] * tw[j];
    }
    return SkewPoly(a.R_, std::move(c));
  }
  SkewPoly& operator*=(const SkewPoly& o) { return *this = *this * o; }

  /// Left multiplication by a scalar.
  friend SkewPoly operator*(const Elem& s, const SkewPoly& a) {
    SkewPoly r = a;
    for (auto& x : r.c_) x = s * x;
    r.trim();
    return r;
  }

  /// Coefficientwise q-Frobenius.
  SkewPoly frob(std::size_t times = 1) const {
    SkewPoly r = *this;
    for (auto& x : r.c_) x = x.frob(times);
    return r;
  }

  /// Evaluation as the additive polynomial sum b_i x^{q^i}; x may live in an
  /// extension of R.
  Elem apply(const Elem& x) const {
    const Ring& S = x.ring();
    Elem acc = S.zero(), xp = x;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) xp = xp.pow(S.q());
      if (!c_[i].is_zero()) acc += lift_to(S, c_[i]) * xp;
    }
    return acc;
  }

  SkewPoly truncated(std::size_t n) const {
    std::vector<Elem> v(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(n, c_.size())));
    return SkewPoly(R_, std::move(v));
  }

  std::string to_string() const;

  friend bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Ring R_;
  std::vector<Elem> c_;
};

inline SkewPoly skew_mul(const SkewPoly& a, const SkewPoly& b) { return a * b; }

inline std::string SkewPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string coef = elem_to_string(c_[i]);
    if (i == 0) {
      out += coef;
      continue;
    }
    if (coef != "1") out += coef + "*";
    out += "tau";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

/// Unique (g, h) with c = g*phi + h and deg h < deg phi. The quotient
/// coefficients follow the top-down recursion
///   g_i = (c_{i+r} - sum_{j=i+1}^{i+r} g_j b_{i+r-j}^{q^j}) * b_r^{-q^i}.
inline std::pair<SkewPoly, SkewPoly> right_divmod(const SkewPoly& c, const SkewPoly& phi) {
  const Ring& R = c.ring();
  require(phi.degree() >= 1, ErrorKind::PreconditionViolated, "divisor must have tau-degree >= 1");
  require(phi.lead().is_unit(), ErrorKind::NonUnitLeadingCoefficient, "divisor has non-unit leading coefficient");
  const int r = phi.degree();
  if (c.degree() < r) return {SkewPoly(R), c};
  const std::size_t top = static_cast<std::size_t>(c.degree() - r);
  // twisted[j][k] = b_k^{q^j}
  std::vector<std::vector<Elem>> twisted(top + 1);
  twisted[0] = phi.coeffs();
  for (std::size_t j = 1; j <= top; ++j) {
    twisted[j] = twisted[j - 1];
    for (auto& x : twisted[j]) x = x.frob();
  }
  Elem inv_lead = phi.lead().inverse();
  std::vector<Elem> g(top + 1, R.zero());
  for (std::size_t i = top + 1; i-- > 0;) {
    Elem s = c.coeff(i + static_cast<std::size_t>(r));
    for (std::size_t j = i + 1; j <= std::min(top, i + static_cast<std::size_t>(r)); ++j)
      s -= g[j] * twisted[j][i + static_cast<std::size_t>(r) - j];
    g[i] = s * inv_lead.frob(i);
  }
  SkewPoly gq(R, std::move(g));
  SkewPoly h = c - gq * phi;
  return {gq, h};
}

/// Standard form over a local ring: returns (c, b') with c = 1 + sum c_i tau^i,
/// all c_i nilpotent, b*c = c*b' and deg b' = r with unit top coefficient.
///
/// Built by lifting through the nilpotent filtration: writing E = b*c - c*b',
/// corrections (delta, beta) solve the linearized equation
///   E_n + b_0 delta_n - sum_m delta_m b'_{n-m}^{q^m} - beta_n = 0,
/// which is exact to one order higher because twisting a nilpotent
/// correction raises its order.
inline std::pair<SkewPoly, SkewPoly> standard_form(const SkewPoly& b, std::size_t r) {
  const Ring& R = b.ring();
  require(r >= 1, ErrorKind::PreconditionViolated, "standard form needs r >= 1");
  require(b.degree() >= static_cast<int>(r) && b.coeff(r).is_unit(), ErrorKind::PreconditionViolated,
          "coefficient b_r must be a unit");
  for (std::size_t i = r + 1; i < b.coeffs().size(); ++i)
    require(b.coeff(i).is_nilpotent(), ErrorKind::PreconditionViolated, "coefficients above r must be nilpotent");
  SkewPoly c = SkewPoly::constant(R.one());
  SkewPoly bs = b.truncated(r + 1);
  const std::size_t rounds = R.nil_index() + 1;
  for (std::size_t round = 0; round <= rounds; ++round) {
    SkewPoly E = b * c - c * bs;
    if (E.is_zero()) return {c, bs};
    const std::size_t top = static_cast<std::size_t>(E.degree());
    std::vector<Elem> delta(top + 1, R.zero()), beta(r + 1, R.zero());
    std::vector<Elem> bl = bs.coeffs();  // bl[k] = b'_k
    const Elem inv_lead = bs.coeff(r).inverse();
    for (std::size_t n = top + 1; n-- > 0;) {
      Elem s = E.coeff(n) + b.coeff(0) * delta[n];
      // sum over m with n - m <= r, m >= 1, skipping the unknown m = n - r
      const std::size_t m_lo = n > r ? n - r : 1;
      for (std::size_t m = std::max<std::size_t>(m_lo, 1); m <= n; ++m) {
        if (n > r && m == n - r) continue;
        if (delta[m].is_zero()) continue;
        s -= delta[m] * bl[n - m].frob(m);
      }
      if (n > r) {
        delta[n - r] = s * inv_lead.frob(n - r);
      } else {
        beta[n] = s;
      }
    }
    delta[0] = R.zero();
    c += SkewPoly(R, delta);
    bs += SkewPoly(R, beta);
  }
  fail(ErrorKind::PreconditionViolated, "standard form did not converge");
}

using SkewMatrix = Matrix<SkewPoly>;

inline SkewMatrix skew_zero(const Ring& R, std::size_t rows, std::size_t cols) {
  return SkewMatrix(rows, cols, SkewPoly(R));
}

inline SkewMatrix skew_identity(const Ring& R, std::size_t n) {
  return SkewMatrix::identity(n, SkewPoly(R), SkewPoly::constant(R.one()));
}

/// Largest tau-degree among the entries.
inline int tau_degree(const SkewMatrix& m) {
  int d = kZeroDegree;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  return d;
}

/// Matrix of tau^k coefficients.
inline ElemMatrix coefficient_matrix(const SkewMatrix& m, std::size_t k) {
  const Ring& R = m.zero().ring();
  ElemMatrix c(m.rows(), m.cols(), R.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).coeff(k);
  return c;
}

/// sum_k C_k tau^k from coefficient matrices.
inline SkewMatrix from_coefficient_matrices(const std::vector<ElemMatrix>& cs, const Ring& R, std::size_t rows,
                                            std::size_t cols) {
  SkewMatrix m = skew_zero(R, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Elem> v;
      for (const auto& c : cs) v.push_back(c(i, j));
      m(i, j) = SkewPoly(R, std::move(v));
    }
  return m;
}

inline SkewMatrix skew_scalar_matrix(const ElemMatrix& c) {
  return c.map([](const Elem& x) { return SkewPoly::constant(x); });
}

/// Entrywise coefficient Frobenius.
inline SkewMatrix frob(const SkewMatrix& m, std::size_t times = 1) {
  return m.map([times](const SkewPoly& x) { return x.frob(times); });
}

/// C = G*Phi + H with every entry of H of tau-degree below deg Phi; requires
/// the top coefficient matrix of Phi to be invertible.
inline std::pair<SkewMatrix, SkewMatrix> skew_matrix_right_divmod(const SkewMatrix& C, const SkewMatrix& Phi) {
  const Ring& R = Phi.zero().ring();
  require(Phi.is_square() && C.cols() == Phi.rows(), ErrorKind::PreconditionViolated, "shape mismatch in division");
  const int r = tau_degree(Phi);
  require(r >= 1, ErrorKind::PreconditionViolated, "divisor must have tau-degree >= 1");
  auto top_inv = inverse(coefficient_matrix(Phi, static_cast<std::size_t>(r)));
  require(top_inv.has_value(), ErrorKind::SingularLeadingMatrix, "leading coefficient matrix is singular");
  SkewMatrix H = C;
  const int dc = tau_degree(C);
  if (dc < r) return {skew_zero(R, C.rows(), Phi.cols()), H};
  const std::size_t top = static_cast<std::size_t>(dc - r);
  std::vector<ElemMatrix> g(top + 1, zero_matrix(R, C.rows(), Phi.cols()));
  for (std::size_t i = top + 1; i-- > 0;) {
    ElemMatrix cn = coefficient_matrix(H, i + static_cast<std::size_t>(r));
    if (cn.is_zero()) continue;
    g[i] = cn * frob(*top_inv, i);
    SkewMatrix step = skew_scalar_matrix(g[i]);
    for (std::size_t a = 0; a < step.rows(); ++a)
      for (std::size_t b = 0; b < step.cols(); ++b) step(a, b) = step(a, b) * SkewPoly::tau(R, i);
    H = H - step * Phi;
  }
  return {from_coefficient_matrices(g, R, C.rows(), Phi.cols()), H};
}

/// Matrix over R given by the constant terms.
inline ElemMatrix lie(const SkewMatrix& m) { return coefficient_matrix(m, 0); }

}  // namespace drinfeld
