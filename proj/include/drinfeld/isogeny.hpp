#pragma once

// Dual isogenies with exact certificates, bounded isogeny search,
// endomorphism bases, and q^l-Frobenius isogenies.

#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/tmotive.hpp"

namespace drinfeld {

/// h with h^p = f for f(t) = sum c_i t^{p i} with coefficients in F_q.
inline Poly pth_root(const Poly& f) {
  const Ring& k = f.ring();
  const u64 root = k.q() / k.p();  // c^{q/p} is the p-th root of c in F_q
  std::vector<Elem> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += k.p()) c.push_back(f.coeff(i).pow(root));
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    require(i % k.p() == 0 || f.coeff(i).is_zero(), ErrorKind::PreconditionViolated, "not a p-th power");
  return Poly(k, std::move(c));
}

/// Product of the distinct monic irreducible factors of f (F_q coefficients).
inline Poly radical(const Poly& f) {
  const Ring& k = f.ring();
  if (f.degree() <= 0) return Poly::constant(k.one());
  Poly g = f.monic();
  Poly dg = g.derivative();
  if (dg.is_zero()) return radical(pth_root(g));
  Poly c = gcd(g, dg);
  Poly w = g / c;  // factors of multiplicity prime to p
  Poly rest = c;
  for (Poly h = gcd(rest, w); h.degree() > 0; h = gcd(rest, w)) rest = rest / h;
  return (w * radical(rest)).monic();
}

/// f∘g = a^s·id and g∘f = a^s·id for an isogeny f, with a the radical of the
/// annihilator of coker f and s minimal.
struct DualCertificate {
  MotiveMorphism f, g;
  Poly a;       // monic, squarefree, F_q coefficients
  std::size_t s = 0;
  Poly as;      // a^s
  bool fg_ok = false, gf_ok = false;
  bool minimal = false;  // a^{s-1}·f^{-1} is not polynomial
  bool verified() const { return fg_ok && gf_ok && minimal; }
};

namespace detail {

/// c·adj(U)/det(U), or nullopt when some entry is not polynomial.
inline std::optional<PolyMatrix> scaled_inverse(const PolyMatrix& adj, const Poly& detU, const Poly& c) {
  PolyMatrix out = adj;
  for (std::size_t i = 0; i < adj.rows(); ++i)
    for (std::size_t j = 0; j < adj.cols(); ++j) {
      auto [q, r] = (c * adj(i, j)).divmod(detU);
      if (!r.is_zero()) return std::nullopt;
      out(i, j) = q;
    }
  return out;
}

}  // namespace detail

inline DualCertificate dual_isogeny(const MotiveMorphism& f) {
  require(is_isogeny_motive(f), ErrorKind::NotAnIsogeny, "morphism is not an isogeny");
  const Ring& k = f.U.zero().ring();
  const Poly ann = annihilator(f);
  DualCertificate cert;
  cert.f = f;
  cert.a = radical(ann);
  std::size_t s = 0;
  Poly as = Poly::constant(k.one());
  while (!ann.divides(as)) {
    as *= cert.a;
    ++s;
  }
  cert.s = s;
  cert.as = as;
  const PolyMatrix adj = adjugate(f.U);
  const Poly dU = det(f.U);
  auto G = detail::scaled_inverse(adj, dU, as);
  require(G.has_value(), ErrorKind::NotAnIsogeny, "a^s·f^{-1} is not polynomial");
  cert.g = make_motive_morphism(f.target, f.source, *G);
  cert.gf_ok = cert.g.U * f.U == times(as, poly_identity(k, f.source.rank()));
  cert.fg_ok = f.U * cert.g.U == times(as, poly_identity(k, f.target.rank()));
  cert.minimal = s == 0 || !detail::scaled_inverse(adj, dU, cert.a.pow(s - 1)).has_value();
  return cert;
}

/// The module-side dual: g : E' -> E with g∘f = phi_{a^s} and
/// f∘g = phi'_{a^s}, read off from the motive-side dual.
struct ModuleDualCertificate {
  TModuleMorphism f, g;
  Poly a;
  std::size_t s = 0;
  bool fg_ok = false, gf_ok = false, minimal = false;
  bool verified() const { return fg_ok && gf_ok && minimal; }
};

inline ModuleDualCertificate dual_isogeny_module(const TModuleMorphism& f) {
  require(is_isogeny_module(f), ErrorKind::NotAnIsogeny, "morphism is not an isogeny");
  const TModule &E = f.source(), &E2 = f.target();
  DualCertificate mc = dual_isogeny(motive_of(f));
  // M(g) = G : M(E) -> M(E'); row i of g is e_i·g = realize(G column i).
  SkewMatrix Fg = skew_zero(E.ring(), E.dim(), E2.dim());
  for (std::size_t i = 0; i < E.dim(); ++i) {
    SkewMatrix row = realize(mc.g.target, mc.g.U.column(i));
    for (std::size_t j = 0; j < E2.dim(); ++j) Fg(i, j) = row(0, j);
  }
  ModuleDualCertificate cert{f, TModuleMorphism(E2, E, Fg), mc.a, mc.s};
  cert.gf_ok = cert.g.matrix() * f.matrix() == phi_of(E, mc.as);
  cert.fg_ok = f.matrix() * cert.g.matrix() == phi_of(E2, mc.as);
  cert.minimal = mc.minimal;
  return cert;
}

namespace detail {

/// F_p-linear map F -> F·phi - phi'·F on skew matrices of tau-degree <= D,
/// in coordinates: F entry (i, j), tau-degree l, F_p-coordinate c is
/// unknown ((i·d + j)·(D+1) + l)·dim k + c.
inline FpMatrix commutator_system(const TModule& E, const TModule& E2, std::size_t D) {
  const Ring& k = E.ring();
  const std::size_t d = E.dim(), d2 = E2.dim(), n = k.dim();
  const std::size_t out_deg = D + static_cast<std::size_t>(std::max(tau_degree(E.phi_t()), tau_degree(E2.phi_t()))) + 1;
  const std::size_t unknowns = d2 * d * (D + 1) * n;
  FpMatrix A(d2 * d * out_deg * n, unknowns, k.p());
  std::size_t col = 0;
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l <= D; ++l)
        for (std::size_t c = 0; c < n; ++c, ++col) {
          std::vector<u32> e(n, 0);
          e[c] = 1;
          SkewMatrix F = skew_zero(k, d2, d);
          F(i, j) = SkewPoly::monomial(Elem(k, e), l);
          SkewMatrix R = F * E.phi_t() - E2.phi_t() * F;
          std::vector<u32> v(A.rows(), 0);
          for (std::size_t a = 0; a < d2; ++a)
            for (std::size_t b = 0; b < d; ++b)
              for (std::size_t m = 0; m < out_deg; ++m) {
                const std::vector<u32> x = R(a, b).coeff(m).coords();
                for (std::size_t cc = 0; cc < n; ++cc) v[((a * d + b) * out_deg + m) * n + cc] = x[cc];
              }
          A.set_column(col, v);
        }
  return A;
}

inline SkewMatrix skew_from_coordinates(const Ring& k, std::size_t d2, std::size_t d, std::size_t D,
                                        const std::vector<u32>& x) {
  const std::size_t n = k.dim();
  SkewMatrix F = skew_zero(k, d2, d);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Elem> c;
      for (std::size_t l = 0; l <= D; ++l) {
        const std::size_t base = ((i * d + j) * (D + 1) + l) * n;
        c.emplace_back(k, std::vector<u32>(x.begin() + static_cast<std::ptrdiff_t>(base),
                                           x.begin() + static_cast<std::ptrdiff_t>(base + n)));
      }
      F(i, j) = SkewPoly(k, std::move(c));
    }
  return F;
}

}  // namespace detail

/// F_p-basis of Hom(E, E') restricted to tau-degree <= D.
inline std::vector<TModuleMorphism> morphism_basis(const TModule& E, const TModule& E2, std::size_t D) {
  require(E.ring() == E2.ring(), ErrorKind::RingMismatch, "modules over different rings");
  require(E.ring().is_field(), ErrorKind::UnsupportedBase, "morphism search needs a field base");
  std::vector<TModuleMorphism> out;
  for (const auto& v : detail::commutator_system(E, E2, D).kernel())
    out.emplace_back(E, E2, detail::skew_from_coordinates(E.ring(), E2.dim(), E.dim(), D, v));
  return out;
}

inline std::vector<TModuleMorphism> endomorphism_basis(const TModule& E, std::size_t D) {
  return morphism_basis(E, E, D);
}

inline std::size_t default_search_bound(const TModule& E) { return E.rank() * E.dim() + 4; }

/// First isogeny E -> E' found by increasing tau-degree up to the bound, or
/// nullopt. Differing ranks or dimensions rule out isogenies.
inline std::optional<TModuleMorphism> are_isogenous(const TModule& E, const TModule& E2,
                                                    std::optional<std::size_t> bound = std::nullopt) {
  require(E.ring() == E2.ring(), ErrorKind::RingMismatch, "modules over different rings");
  if (E.rank() != E2.rank() || E.dim() != E2.dim()) return std::nullopt;
  const std::size_t B = bound.value_or(default_search_bound(E));
  for (std::size_t D = 0; D <= B; ++D)
    for (const auto& f : morphism_basis(E, E2, D))
      if (is_isogeny_module(f)) return f;
  return std::nullopt;
}

/// tau_M^l with matrix T·T^{(q)}·...·T^{(q^{l-1})}; needs k inside F_{q^l}.
inline MotiveMorphism frobenius_isogeny(const TMotive& M, std::size_t l) {
  const Ring& k = M.ring;
  require(l >= 1, ErrorKind::PreconditionViolated, "l must be positive");
  require(l % k.degree_over_fq() == 0, ErrorKind::BaseTooLarge, "base field is not contained in F_{q^l}");
  PolyMatrix P = poly_identity(k, M.rank());
  PolyMatrix tw = M.T;
  for (std::size_t i = 0; i < l; ++i) {
    P = P * tw;
    tw = frob(tw);
  }
  return make_motive_morphism(M, M, std::move(P));
}

}  // namespace drinfeld
