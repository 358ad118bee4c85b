#pragma once

// Finite-field utilities over a base field k: certified extensions
// k_m = k[y]/(g), minimal polynomials over F_q and root search.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "drinfeld/poly.hpp"

namespace drinfeld {

namespace detail {

inline Poly powmod(Poly a, u64 e, const Poly& g) {
  Poly r = Poly::constant(g.ring().one()) % g;
  a = a % g;
  while (e) {
    if (e & 1) r = (r * a) % g;
    e >>= 1;
    if (e) a = (a * a) % g;
  }
  return r;
}

}  // namespace detail

/// Rabin's test over a finite field k with |k| = Q: a monic g of degree n is
/// irreducible iff y^{Q^n} = y mod g and gcd(y^{Q^{n/l}} - y, g) = 1 for all
/// primes l | n.
inline bool is_irreducible_over(const Poly& g) {
  const Ring& k = g.ring();
  require(k.is_field(), ErrorKind::UnsupportedBase, "irreducibility needs a field");
  const int n = g.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  auto Q = k.order();
  require(Q.has_value(), ErrorKind::PreconditionViolated, "field too large");
  const Poly y = Poly::var(k);
  std::vector<Poly> fr(static_cast<std::size_t>(n) + 1, Poly(k));
  fr[0] = y % g;
  for (int i = 1; i <= n; ++i) fr[static_cast<std::size_t>(i)] = detail::powmod(fr[static_cast<std::size_t>(i - 1)], *Q, g);
  if (!(fr[static_cast<std::size_t>(n)] == fr[0])) return false;
  int m = n;
  for (int l = 2; l <= m; ++l) {
    if (m % l) continue;
    while (m % l == 0) m /= l;
    Poly h = fr[static_cast<std::size_t>(n / l)] - y;
    if (gcd(h, g).degree() != 0) return false;
  }
  return true;
}

/// The degree-m extension of k, defined by the lexicographically first monic
/// irreducible polynomial (coefficients enumerated in coordinate-counter
/// order, constant term fastest). Results are memoized per (k, m).
inline Ring extension_field(const Ring& k, std::size_t m) {
  require(k.is_field(), ErrorKind::UnsupportedBase, "extensions are built over fields");
  require(m >= 1, ErrorKind::PreconditionViolated, "extension degree must be >= 1");
  if (m == 1) return k;
  static std::mutex mu;
  static std::vector<std::pair<std::pair<Ring, std::size_t>, Ring>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [key, L] : cache)
      if (key.second == m && key.first == k) return L;
  }
  auto elems = k.elements();
  std::vector<std::size_t> digits(m, 0);
  for (;;) {
    std::vector<Elem> c;
    for (std::size_t i = 0; i < m; ++i) c.push_back(elems[digits[i]]);
    c.push_back(k.one());
    Poly g(k, c);
    if (!c[0].is_zero() && is_irreducible_over(g)) {
      std::vector<u32> coords;
      for (const auto& x : c) coords.insert(coords.end(), x.coords().begin(), x.coords().end());
      Ring L = Ring::extension_unchecked(k, std::move(coords));
      std::lock_guard<std::mutex> lock(mu);
      cache.push_back({{k, m}, L});
      return L;
    }
    std::size_t i = 0;
    while (i < m && ++digits[i] == elems.size()) digits[i++] = 0;
    require(i < m, ErrorKind::PreconditionViolated, "no irreducible polynomial found");
  }
}

/// Minimal polynomial of x over F_q, as a polynomial over x's ring with
/// F_q coefficients: the product of (t - x^{q^i}) over the Frobenius orbit.
inline Poly min_poly_fq(const Elem& x) {
  const Ring& R = x.ring();
  Poly p = Poly::constant(R.one());
  Elem y = x;
  do {
    p *= Poly(R, {-y, R.one()});
    y = y.frob();
  } while (!(y == x));
  return p;
}

/// Roots of p in its coefficient field, sorted by coordinates.
inline std::vector<Elem> roots_in_field(const Poly& p) {
  std::vector<Elem> out;
  for (const auto& x : p.ring().elements())
    if (p.eval(x).is_zero()) out.push_back(x);
  return out;
}

/// Degree of F_q(x) over F_q.
inline std::size_t fq_degree(const Elem& x) {
  std::size_t n = 1;
  for (Elem y = x.frob(); !(y == x); y = y.frob()) ++n;
  return n;
}

}  // namespace drinfeld
