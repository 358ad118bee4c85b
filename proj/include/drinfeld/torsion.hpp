#pragma once

// a-torsion of t-modules over finite fields: the shtuka M/aM, the points
// E[a](k_m) with their F_q[t]/(a)-module structure and Frobenius action,
// the coprime decomposition E[ab] = E[a] x E[b], and the identification of
// kernel points with points of the cokernel shtuka.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/tmotive.hpp"

namespace drinfeld {

/// M(E)/a·M(E) with the induced tau and t-action.
inline FinShtuka torsion_shtuka(const TModule& E, const Poly& a) {
  require(!a.is_zero(), ErrorKind::PreconditionViolated, "a must be nonzero");
  require(a.over_fq(), ErrorKind::PreconditionViolated, "a must have coefficients in F_q");
  TMotive M = motive_of(E);
  return cokernel_shtuka(make_motive_morphism(M, M, times(a.monic(), poly_identity(E.ring(), M.rank()))));
}

/// Finite F_q[t]-module given by the matrix of t in some F_q-basis, up to
/// isomorphism: the nonconstant invariant factors of xI - t.
inline std::vector<Poly> module_invariants(const ElemMatrix& t_matrix) {
  const std::size_t n = t_matrix.rows();
  if (n == 0) return {};
  const Ring& R = t_matrix.zero().ring();
  PolyMatrix A = times(Poly::var(R), poly_identity(R, n)) - scalar_poly_matrix(t_matrix);
  std::vector<Poly> out;
  for (auto& d : smith_normal_form(A).diagonal())
    if (d.degree() > 0) out.push_back(std::move(d));
  return out;
}

/// Free of rank r over F_q[t]/(a): invariant factors are r copies of a.
inline bool is_free_quotient_module(const std::vector<Poly>& invariants, const Poly& a, std::size_t r) {
  if (a.degree() == 0) return invariants.empty();
  if (invariants.size() != r) return false;
  for (const auto& f : invariants)
    if (!(f == a.monic())) return false;
  return true;
}

/// Reduces an F_p-basis of an F_q-subspace of L^d to an F_q-basis.
inline std::vector<Point> fq_basis_of(const std::vector<Point>& fp_basis, const Ring& L, std::size_t d) {
  const std::size_t n = L.dim();
  FpSpan span(d * n, L.p());
  std::vector<Point> out;
  auto flat = [](const Point& x) {
    std::vector<u32> v;
    for (const auto& c : x) v.insert(v.end(), c.coords().begin(), c.coords().end());
    return v;
  };
  for (const auto& v : fp_basis) {
    if (span.contains(flat(v))) continue;
    out.push_back(v);
    for (const auto& c : L.fq_basis()) {
      Point g;
      for (const auto& x : v) g.push_back(c * x);
      span.insert(flat(g));
    }
  }
  return out;
}

/// Matrix over F_q (entries in L) of an F_q-linear map on the span of an
/// F_q-basis: column j = coordinates of op(b_j).
template <class Op>
ElemMatrix fq_matrix(const std::vector<Point>& basis, const Ring& L, Op&& op) {
  const std::size_t N = basis.size(), n = L.dim();
  if (N == 0) return zero_matrix(L, 0, 0);
  const std::size_t d = basis[0].size();
  auto lam = L.fq_basis();
  const std::size_t s = lam.size();
  FpMatrix A(d * n, N * s, L.p());
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t c = 0; c < s; ++c) {
      std::vector<u32> col;
      for (const auto& x : basis[i]) {
        Elem y = lam[c] * x;
        col.insert(col.end(), y.coords().begin(), y.coords().end());
      }
      A.set_column(i * s + c, col);
    }
  ElemMatrix out = zero_matrix(L, N, N);
  for (std::size_t j = 0; j < N; ++j) {
    Point y = op(basis[j]);
    std::vector<u32> rhs;
    for (const auto& x : y) rhs.insert(rhs.end(), x.coords().begin(), x.coords().end());
    auto sol = A.solve(rhs);
    require(sol.has_value(), ErrorKind::PreconditionViolated, "operator does not preserve the span");
    for (std::size_t i = 0; i < N; ++i) {
      Elem e = L.zero();
      for (std::size_t c = 0; c < s; ++c) e += lam[c].scaled((*sol)[i * s + c]);
      out(i, j) = e;
    }
  }
  return out;
}

struct TorsionPoints {
  Ring field;                      // k_m
  std::size_t degree = 1;          // m = [k_m : k]
  std::vector<Point> points;       // sorted by coordinates
  std::vector<Point> fq_basis;     // F_q-basis of the points
  ElemMatrix t_matrix;             // phi_t on fq_basis
  std::vector<Poly> invariants;    // of the F_q[t]-module, over k_m
  bool free = false;               // free of rank r over F_q[t]/(a)
  std::size_t rank = 0;            // r when free
  /// x -> x^{|k|} on points, as indices into `points`.
  std::vector<std::size_t> frobenius;
};

namespace detail {

inline std::vector<std::size_t> frobenius_permutation(const std::vector<Point>& pts, std::size_t power) {
  std::vector<std::size_t> perm;
  perm.reserve(pts.size());
  for (const auto& x : pts) {
    Point y;
    for (const auto& c : x) y.push_back(c.frob(power));
    auto it = std::lower_bound(pts.begin(), pts.end(), y);
    require(it != pts.end() && *it == y, ErrorKind::PreconditionViolated, "point set is not Frobenius-stable");
    perm.push_back(static_cast<std::size_t>(it - pts.begin()));
  }
  return perm;
}

}  // namespace detail

/// Points of the kernel of F : E -> (something), as an F_q[t]-module via
/// phi_t, over the degree-m extension of the base field.
inline TorsionPoints kernel_module(const TModule& E, const SkewMatrix& F, std::size_t m, const Poly& a) {
  const Ring& k = E.ring();
  require(k.is_field(), ErrorKind::UnsupportedBase, "points are taken over finite fields");
  TorsionPoints T;
  T.field = extension_field(k, m);
  T.degree = m;
  const Ring& L = T.field;
  auto fp = kernel_basis(F, L);
  T.points = span_points(fp, L, E.dim());
  T.fq_basis = fq_basis_of(fp, L, E.dim());
  T.t_matrix = fq_matrix(T.fq_basis, L, [&](const Point& x) { return mat_vec(E.phi_t(), x); });
  T.invariants = module_invariants(T.t_matrix);
  if (!a.is_zero()) {
    T.free = is_free_quotient_module(T.invariants, a.lift(L), E.rank());
    if (T.free) T.rank = E.rank();
  }
  T.frobenius = detail::frobenius_permutation(T.points, k.degree_over_fq());
  return T;
}

/// E[a](k_m).
inline TorsionPoints torsion_points(const TModule& E, const Poly& a, std::size_t m) {
  require(!a.is_zero(), ErrorKind::PreconditionViolated, "a must be nonzero");
  return kernel_module(E, phi_of(E, a), m, a);
}

/// Least m with E[a](k_m) = E[a](k^sep), from the torsion shtuka.
inline std::size_t torsion_splitting_degree(const TModule& E, const Poly& a, std::size_t cap = 24) {
  auto m = splitting_degree(torsion_shtuka(E, a), cap);
  require(m.has_value(), ErrorKind::ExtensionCapExceeded, "splitting degree exceeds the cap");
  return *m;
}

/// "F_q[t]/(a)" with a printed over t.
inline std::string quotient_ring_name(const Poly& a) {
  const Ring& k = a.ring();
  return "F_" + std::to_string(k.q()) + "[t]/(" + a.monic().to_string() + ")";
}

/// E[a] x E[b] -> E[ab], (x, y) -> x + y, is bijective with inverse
/// z -> (phi_{ub}(z), phi_{sa}(z)) where sa + ub = 1. Checked on points over
/// k_m (m = 0 selects the splitting degree of E[ab]).
inline bool crt_check(const TModule& E, const Poly& a, const Poly& b, std::size_t m = 0, std::size_t cap = 24) {
  require(!a.is_zero() && !b.is_zero(), ErrorKind::PreconditionViolated, "a and b must be nonzero");
  auto [g, s, u] = xgcd(a, b);
  require(g.degree() == 0, ErrorKind::NotCoprime, "a and b are not coprime");
  const Elem gi = g.coeff(0).inverse();
  s = s * Poly::constant(gi);
  u = u * Poly::constant(gi);
  const Poly ab = a * b;
  if (m == 0) m = torsion_splitting_degree(E, ab, cap);
  const Ring L = extension_field(E.ring(), m);
  const std::size_t d = E.dim();
  auto Pa = span_points(kernel_basis(phi_of(E, a), L), L, d);
  auto Pb = span_points(kernel_basis(phi_of(E, b), L), L, d);
  auto Pab = span_points(kernel_basis(phi_of(E, ab), L), L, d);
  if (Pa.size() * Pb.size() != Pab.size()) return false;
  const SkewMatrix ea = phi_of(E, u * b), eb = phi_of(E, s * a);
  auto add = [](Point x, const Point& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  };
  for (const auto& z : Pab) {
    Point x = mat_vec(ea, z), y = mat_vec(eb, z);
    if (!std::binary_search(Pa.begin(), Pa.end(), x) || !std::binary_search(Pb.begin(), Pb.end(), y)) return false;
    if (!(add(x, y) == z)) return false;
  }
  for (const auto& x : Pa)
    for (const auto& y : Pb) {
      Point z = add(x, y);
      if (!std::binary_search(Pab.begin(), Pab.end(), z)) return false;
      if (!(mat_vec(ea, z) == x) || !(mat_vec(eb, z) == y)) return false;
    }
  return true;
}

/// For a kernel point x of an isogeny f : E -> E' and V = coker M(f), the
/// vector z with z_b = w_b(x), w_b the lift of the b-th basis vector of V
/// realized as a row of R{tau}^{1 x d}. Since w·F vanishes on ker f this is
/// well defined, and z^{(q)} = F_V^T z makes z a point of Dr_q(V).
class KernelPointMap {
 public:
  explicit KernelPointMap(const TModuleMorphism& f) : Mf_(motive_of(f)) {
    Cokernel cok(Mf_.U);
    const Ring& k = f.source().ring();
    V_ = cokernel_shtuka(Mf_);
    for (std::size_t b = 0; b < cok.dim(); ++b) {
      std::vector<Elem> e(cok.dim(), k.zero());
      e[b] = k.one();
      rows_.push_back(realize(Mf_.target, cok.lift(e)));
    }
  }

  const FinShtuka& shtuka() const { return V_; }

  std::vector<Elem> operator()(const Point& x) const {
    std::vector<Elem> z;
    for (const auto& w : rows_) z.push_back(mat_vec(w, x)[0]);
    return z;
  }

 private:
  MotiveMorphism Mf_;
  FinShtuka V_;
  std::vector<SkewMatrix> rows_;
};

}  // namespace drinfeld
