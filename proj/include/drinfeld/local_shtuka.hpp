#pragma once

// Truncated local shtukas at a prime p(t) of F_q[t]: the completion of a
// t-motive along t -> omega(z), where z = p(t) and omega(z) is the Hensel
// root of p(X) = z over k[[z]] with omega(0) a root of p in k. All series
// are polynomials in z of degree < n.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/tmotive.hpp"

namespace drinfeld {

namespace series {

inline Poly trunc(const Poly& a, std::size_t n) {
  if (a.coeffs().size() <= n) return a;
  return Poly(a.ring(), std::vector<Elem>(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(n)));
}

inline Poly mul(const Poly& a, const Poly& b, std::size_t n) { return trunc(a * b, n); }

/// f(x) mod z^n for f in k[t].
inline Poly eval(const Poly& f, const Poly& x, std::size_t n) {
  Poly acc(x.ring());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = mul(acc, x, n) + Poly::constant(f.coeff(i));
  return trunc(acc, n);
}

/// 1/u mod z^n; u(0) must be a unit.
inline Poly inverse(const Poly& u, std::size_t n) {
  require(u.coeff(0).is_unit(), ErrorKind::PreconditionViolated, "series is not invertible");
  Poly inv = Poly::constant(u.coeff(0).inverse());
  const Poly one = Poly::constant(u.ring().one());
  // inv <- inv + inv·(1 - u·inv) doubles the precision; no division by 2.
  for (std::size_t prec = 1; prec < n; prec *= 2) inv = inv + mul(inv, one - mul(u, inv, n), n);
  return trunc(inv, n);
}

/// z-adic valuation; n when a vanishes mod z^n.
inline std::size_t valuation(const Poly& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!a.coeff(i).is_zero()) return i;
  return n;
}

inline PolyMatrix trunc(const PolyMatrix& m, std::size_t n) {
  return m.map([n](const Poly& x) { return trunc(x, n); });
}

inline PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b, std::size_t n) { return trunc(a * b, n); }

}  // namespace series

/// Minimal polynomial over F_q of theta: the characteristic prime.
inline Poly char_prime(const TModule& E) {
  require(E.ring().is_field(), ErrorKind::UnsupportedBase, "the characteristic prime is taken over fields");
  return min_poly_fq(E.ring().theta());
}

struct LocalShtuka {
  Ring ring;
  Poly p;             // monic irreducible over F_q
  std::size_t f = 1;  // deg p
  std::size_t n = 0;  // precision
  Elem root;          // omega(0), a root of p in k
  Poly omega;         // omega(z) with p(omega) = z mod z^n
  PolyMatrix tauhat;  // r x r over k[z]/(z^n), semilinear for sigma^f
  /// Truncation exponents n_i with Mhat = sum_i k[z]/(z^{n_i}); all equal n
  /// for completions of motives.
  std::vector<std::size_t> precision;

  std::size_t rank() const { return tauhat.rows(); }

  friend bool operator==(const LocalShtuka& a, const LocalShtuka& b) {
    return a.ring == b.ring && a.p == b.p && a.f == b.f && a.n == b.n && a.root == b.root && a.omega == b.omega &&
           a.tauhat == b.tauhat && a.precision == b.precision;
  }
};

/// omega(z) with p(omega) = z mod z^n and omega(0) = x0, by Newton steps.
inline Poly hensel_root(const Poly& p, const Elem& x0, std::size_t n) {
  const Ring& k = p.ring();
  require(p.eval(x0).is_zero(), ErrorKind::PreconditionViolated, "start value is not a root");
  Poly dp = p.derivative();
  require(!dp.eval(x0).is_zero(), ErrorKind::PreconditionViolated, "root is not simple");
  const Poly z = Poly::var(k);
  Poly w = Poly::constant(x0);
  for (std::size_t prec = 1; prec < n; prec *= 2) {
    Poly err = series::eval(p, w, n) - z;
    w = series::trunc(w - series::mul(err, series::inverse(series::eval(dp, w, n), n), n), n);
  }
  return series::trunc(w, n);
}

/// The a_0-component of the p-adic completion of M, truncated at z^n.
inline LocalShtuka local_shtuka_at(const TMotive& M, const Poly& prime, std::size_t n) {
  const Ring& k = M.ring;
  require(k.is_field(), ErrorKind::UnsupportedBase, "local shtukas are built over fields");
  require(n >= 1, ErrorKind::PreconditionViolated, "precision must be positive");
  require(prime.degree() >= 1 && prime.over_fq(), ErrorKind::PreconditionViolated,
          "p must be a nonconstant polynomial over F_q");
  const Poly p = prime.monic();
  std::optional<Elem> root;
  if (p.eval(k.theta()).is_zero()) {
    root = k.theta();
  } else {
    auto roots = roots_in_field(p);
    if (!roots.empty()) root = roots.front();
  }
  require(root.has_value(), ErrorKind::ResidueFieldTooSmall, "p has no root in the base field");
  require(min_poly_fq(*root) == p, ErrorKind::PreconditionViolated, "p is not irreducible over F_q");
  LocalShtuka L;
  L.ring = k;
  L.p = p;
  L.f = static_cast<std::size_t>(p.degree());
  L.n = n;
  L.root = *root;
  L.omega = hensel_root(p, *root, n);
  // tau^f on the a_0-component: (T T^{(q)} ... T^{(q^{f-1})})(omega(z)).
  PolyMatrix P = poly_identity(k, M.rank()), tw = M.T;
  for (std::size_t i = 0; i < L.f; ++i) {
    P = P * tw;
    tw = frob(tw);
  }
  L.tauhat = P.map([&](const Poly& x) { return series::eval(x, L.omega, n); });
  L.precision.assign(M.rank(), n);
  return L;
}

/// The same local shtuka at a lower precision.
inline LocalShtuka reduce_precision(const LocalShtuka& L, std::size_t n) {
  require(n >= 1 && n <= L.n, ErrorKind::PreconditionViolated, "can only lower the precision");
  LocalShtuka out = L;
  out.n = n;
  out.omega = series::trunc(L.omega, n);
  out.tauhat = series::trunc(L.tauhat, n);
  for (auto& e : out.precision) e = std::min(e, n);
  return out;
}

namespace detail {

/// A0·A0^{(q^f)}·...·A0^{(q^{f(r-1)})}: the r-fold iterate of tauhat mod z.
inline ElemMatrix residual_iterate(const LocalShtuka& L) {
  ElemMatrix A0 = L.tauhat.map([](const Poly& x) { return x.coeff(0); });
  ElemMatrix P = identity_matrix(L.ring, L.rank()), tw = A0;
  for (std::size_t i = 0; i < L.rank(); ++i) {
    P = P * tw;
    tw = frob(tw, L.f);
  }
  return P;
}

}  // namespace detail

/// tauhat is topologically nilpotent: its reduction mod z is nilpotent.
inline bool is_formal(const LocalShtuka& L) { return detail::residual_iterate(L).is_zero(); }

struct LocalInvariants {
  /// log_q |E[p^j]| for j = 1..n.
  std::vector<std::size_t> order_exponents;
  std::size_t omega_dim = 0;
  std::size_t etale_rank = 0;
};

/// dim_k coker(tauhat) over k[z]/(z^n): rn minus the rank of the span of
/// z^j·(columns of tauhat).
inline std::size_t cokernel_dim(const LocalShtuka& L) {
  const std::size_t r = L.rank(), n = L.n;
  ElemMatrix A = zero_matrix(L.ring, r * n, r * n);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t m = 0; m + j < n; ++m) A(i * n + m + j, c * n + j) = L.tauhat(i, c).coeff(m);
  return r * n - rank(A);
}

inline LocalInvariants local_invariants(const LocalShtuka& L) {
  Poly d = series::trunc(det(L.tauhat), L.n);
  std::size_t v = series::valuation(d, L.n);
  require(v < L.n, ErrorKind::PrecisionTooLow, "precision does not exceed the valuation of det tauhat");
  LocalInvariants out;
  // |E[p^j]| = q^{f·dim_k Mhat/z^j Mhat}: the f conjugate factors of the
  // completion are isomorphic through sigma.
  for (std::size_t j = 1; j <= L.n; ++j) {
    std::size_t dim = 0;
    for (auto e : L.precision) dim += std::min(e, j);
    out.order_exponents.push_back(L.f * dim);
  }
  out.omega_dim = cokernel_dim(L);
  out.etale_rank = column_space(detail::residual_iterate(L)).size();
  return out;
}

/// z·(Mhat/z^j) sits inside Mhat/z^{j+1} with quotient of dimension r for
/// every j < n (freeness of the truncations), and tauhat is z-linear.
inline bool divisibility_check(const LocalShtuka& L) {
  const std::size_t r = L.rank();
  if (L.precision.size() != r) return false;
  for (std::size_t j = 0; j < L.n; ++j) {
    std::size_t layer = 0;  // dim z^j Mhat / z^{j+1} Mhat
    for (auto e : L.precision) layer += e > j ? 1 : 0;
    if (layer != r) return false;
  }
  const Poly z = Poly::var(L.ring);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t i = 0; i < r; ++i) {
      // tauhat(z e_c) = z tauhat(e_c), since sigma fixes z.
      Poly lhs = series::mul(L.tauhat(i, c), z.frob(L.f), L.n);
      Poly rhs = series::mul(z, L.tauhat(i, c), L.n);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

}  // namespace drinfeld
