#pragma once

// Abelian Anderson t-modules E = G_a^d with phi_t in R{tau}^{d x d}, their
// morphisms, and additive kernels over finite field extensions.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/fields.hpp"
#include "drinfeld/skew_poly.hpp"

namespace drinfeld {

class TModule {
 public:
  TModule() = default;

  /// General t-module: (Lie(phi_t) - theta)^d must vanish.
  static TModule create(const Ring& R, SkewMatrix phi_t) {
    require(phi_t.is_square() && phi_t.rows() >= 1, ErrorKind::MalformedInput, "phi_t must be a square d x d matrix");
    const std::size_t d = phi_t.rows();
    ElemMatrix n = lie(phi_t) - identity_matrix(R, d).scaled(R.theta());
    ElemMatrix p = identity_matrix(R, d);
    for (std::size_t i = 0; i < d; ++i) p = p * n;
    require(p.is_zero(), ErrorKind::NotDrinfeld, "Lie(phi_t) - theta is not nilpotent of order <= d");
    require(tau_degree(phi_t) >= 1, ErrorKind::NotDrinfeld, "phi_t has no tau terms");
    TModule E;
    E.R_ = R;
    E.phi_ = std::move(phi_t);
    E.unit_ = skew_identity(R, d);
    return E;
  }

  const Ring& ring() const { return R_; }
  std::size_t dim() const { return phi_.rows(); }
  const SkewMatrix& phi_t() const { return phi_; }
  bool is_drinfeld() const { return dim() == 1; }
  /// Unit u with phi_t(input) * u = u * phi_t(stored), identity unless a
  /// standard form was taken.
  const SkewMatrix& conjugator() const { return unit_; }

  /// deg_tau phi_t * d; for Drinfeld modules the rank.
  std::size_t rank() const { return static_cast<std::size_t>(tau_degree(phi_)) * dim(); }

  /// Top tau-coefficient matrix of phi_t is invertible, so that the motive
  /// has the basis {tau^l e_i}.
  bool has_invertible_top() const {
    return inverse(coefficient_matrix(phi_, static_cast<std::size_t>(tau_degree(phi_)))).has_value();
  }

  friend bool operator==(const TModule& a, const TModule& b) { return a.R_ == b.R_ && a.phi_ == b.phi_; }

 private:
  friend TModule new_drinfeld(const Ring& R, const SkewPoly& phi_t);
  Ring R_;
  SkewMatrix phi_;
  SkewMatrix unit_;
};

/// Drinfeld module with phi_t = theta + b_1 tau + ... ; over a truncated
/// ring the standard form is taken and the conjugating unit kept.
inline TModule new_drinfeld(const Ring& R, const SkewPoly& phi_t) {
  require(!phi_t.is_zero() && phi_t.coeff(0) == R.theta(), ErrorKind::NotDrinfeld,
          "constant term of phi_t must equal gamma(t)");
  int r = -1;
  for (std::size_t i = 1; i < phi_t.coeffs().size(); ++i)
    if (phi_t.coeff(i).is_unit()) r = static_cast<int>(i);
  require(r >= 1, ErrorKind::NotDrinfeld, "phi_t has no unit coefficient of positive degree");
  TModule E;
  E.R_ = R;
  E.phi_ = skew_zero(R, 1, 1);
  E.unit_ = skew_identity(R, 1);
  if (phi_t.degree() > r) {
    auto [c, bs] = standard_form(phi_t, static_cast<std::size_t>(r));
    E.phi_(0, 0) = bs;
    E.unit_(0, 0) = c;
  } else {
    E.phi_(0, 0) = phi_t;
  }
  return E;
}

/// phi_a = a(phi_t) for a in F_q[t].
inline SkewMatrix phi_of(const TModule& E, const Poly& a) {
  const Ring& R = E.ring();
  require(a.over_fq() || a.is_zero(), ErrorKind::PreconditionViolated, "a must have coefficients in F_q");
  const std::size_t d = E.dim();
  SkewMatrix acc = skew_zero(R, d, d);
  ElemMatrix I = identity_matrix(R, d);
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    acc = acc * E.phi_t();
    acc = acc + skew_scalar_matrix(I.scaled(lift_to(R, a.coeff(i))));
  }
  return acc;
}

class TModuleMorphism {
 public:
  TModuleMorphism() = default;
  /// Checks F * phi_t = phi'_t * F.
  TModuleMorphism(TModule source, TModule target, SkewMatrix F)
      : src_(std::move(source)), dst_(std::move(target)), F_(std::move(F)) {
    require(src_.ring() == dst_.ring(), ErrorKind::RingMismatch, "source and target over different rings");
    require(F_.rows() == dst_.dim() && F_.cols() == src_.dim(), ErrorKind::MalformedInput,
            "morphism matrix must be d' x d");
    require(F_ * src_.phi_t() == dst_.phi_t() * F_, ErrorKind::NotAMorphism, "F does not commute with the t-action");
  }

  const TModule& source() const { return src_; }
  const TModule& target() const { return dst_; }
  const SkewMatrix& matrix() const { return F_; }
  bool is_zero() const { return F_.is_zero(); }

 private:
  TModule src_, dst_;
  SkewMatrix F_;
};

/// f ∘ g.
inline TModuleMorphism compose(const TModuleMorphism& f, const TModuleMorphism& g) {
  require(g.target() == f.source(), ErrorKind::PreconditionViolated, "morphisms are not composable");
  return TModuleMorphism(g.source(), f.target(), f.matrix() * g.matrix());
}

inline TModuleMorphism identity_morphism(const TModule& E) {
  return TModuleMorphism(E, E, skew_identity(E.ring(), E.dim()));
}

inline TModuleMorphism phi_morphism(const TModule& E, const Poly& a) { return TModuleMorphism(E, E, phi_of(E, a)); }

inline ElemMatrix lie(const TModuleMorphism& f) { return lie(f.matrix()); }

/// F_p-linear map x -> F(x) on L^d as a matrix in F_p-coordinates
/// (component-major: coordinate index i*dim L + c).
inline FpMatrix additive_operator(const SkewMatrix& F, const Ring& L) {
  const std::size_t d = F.cols(), e = F.rows(), n = L.dim();
  FpMatrix m(e * n, d * n, L.p());
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<u32> v(n, 0);
      v[c] = 1;
      Elem x(L, v);
      for (std::size_t i = 0; i < e; ++i) {
        Elem y = F(i, j).apply(x);
        for (std::size_t cc = 0; cc < n; ++cc) m(i * n + cc, j * n + c) = y.coords()[cc];
      }
    }
  return m;
}

using Point = std::vector<Elem>;

/// F_p-basis of {x in L^d : F(x) = 0}.
inline std::vector<Point> kernel_basis(const SkewMatrix& F, const Ring& L) {
  const std::size_t d = F.cols(), n = L.dim();
  std::vector<Point> out;
  for (const auto& v : additive_operator(F, L).kernel()) {
    Point x;
    for (std::size_t j = 0; j < d; ++j)
      x.emplace_back(L, std::vector<u32>(v.begin() + static_cast<std::ptrdiff_t>(j * n),
                                         v.begin() + static_cast<std::ptrdiff_t>((j + 1) * n)));
    out.push_back(std::move(x));
  }
  return out;
}

/// All F_p-combinations of a basis, sorted lexicographically by coordinates.
inline std::vector<Point> span_points(const std::vector<Point>& basis, const Ring& L, std::size_t d,
                                      std::size_t limit = std::size_t{1} << 20) {
  u64 count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    count *= L.p();
    require(count <= limit, ErrorKind::PreconditionViolated, "too many points to enumerate");
  }
  std::vector<Point> out;
  out.reserve(count);
  std::vector<u32> digits(basis.size(), 0);
  for (;;) {
    Point x(d, L.zero());
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (digits[b])
        for (std::size_t j = 0; j < d; ++j) x[j] += basis[b][j].scaled(digits[b]);
    out.push_back(std::move(x));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == L.p()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// ker f over k_m = the degree-m extension of the base field, sorted.
inline std::vector<Point> kernel_points(const TModuleMorphism& f, std::size_t m) {
  const Ring& k = f.source().ring();
  require(k.is_field(), ErrorKind::UnsupportedBase, "kernel points need a finite field base");
  Ring L = extension_field(k, m);
  return span_points(kernel_basis(f.matrix(), L), L, f.source().dim());
}

inline std::vector<Elem> mat_vec(const SkewMatrix& F, const Point& x) {
  std::vector<Elem> y(F.rows(), x.empty() ? Elem() : x[0].ring().zero());
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) y[i] += F(i, j).apply(x[j]);
  return y;
}

/// Separability of an isogeny of Drinfeld modules / t-modules over a field:
/// Lie f is invertible.
inline bool lie_invertible(const TModuleMorphism& f) {
  ElemMatrix L = lie(f);
  if (!L.is_square()) return false;
  return inverse(L).has_value();
}

}  // namespace drinfeld
