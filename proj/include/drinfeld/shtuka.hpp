#pragma once

// Finite F_q-shtukas (V, F) over a finite field k with tau(v) = F·v^{(q)},
// the Drinfeld functor to additive group-scheme presentations and back,
// and the invariants read off from F.

#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/fields.hpp"
#include "drinfeld/linalg.hpp"

namespace drinfeld {

struct FinShtuka {
  Ring ring;
  ElemMatrix F;
  std::optional<ElemMatrix> t_action;

  FinShtuka() = default;
  FinShtuka(Ring k, ElemMatrix f, std::optional<ElemMatrix> t = std::nullopt)
      : ring(std::move(k)), F(std::move(f)), t_action(std::move(t)) {
    require(F.is_square(), ErrorKind::MalformedInput, "F must be square");
    if (t_action)
      require(t_action->rows() == F.rows() && t_action->cols() == F.rows(), ErrorKind::MalformedInput,
              "t_action must match F");
  }

  std::size_t dim() const { return F.rows(); }

  friend bool operator==(const FinShtuka& a, const FinShtuka& b) {
    return a.ring == b.ring && a.F == b.F && a.t_action == b.t_action;
  }
};

/// Spec Sym(V^)/(z^q - C z): generators z_1..z_n dual to a basis of V,
/// primitive for the comultiplication, with z_i^q = sum_j C_ij z_j.
struct GroupSchemePresentation {
  Ring ring;
  ElemMatrix C;
  std::size_t generators() const { return C.rows(); }
  friend bool operator==(const GroupSchemePresentation& a, const GroupSchemePresentation& b) {
    return a.ring == b.ring && a.C == b.C;
  }
};

/// Relations z^{(q)} = C·z with C = F^T. With z_i the i-th coordinate
/// function on V, v^{q} - F(sigma*v) evaluated on basis vectors gives
/// z_i^q = sum_j F_ji z_j.
inline GroupSchemePresentation dr_q(const FinShtuka& V) {
  require(V.ring.is_field(), ErrorKind::UnsupportedBase, "shtukas live over fields");
  return {V.ring, V.F.transpose()};
}

inline FinShtuka m_q(const GroupSchemePresentation& G) {
  require(G.ring.valid() && G.ring.is_field(), ErrorKind::MalformedPresentation, "presentation over a non-field");
  require(G.C.is_square(), ErrorKind::MalformedPresentation, "relation matrix must be square");
  for (std::size_t i = 0; i < G.C.rows(); ++i)
    for (std::size_t j = 0; j < G.C.cols(); ++j)
      require(G.C(i, j).ring() == G.ring, ErrorKind::MalformedPresentation, "relation coefficient from another ring");
  return FinShtuka(G.ring, G.C.transpose());
}

/// log_q of the order: the algebra has the monomial basis z^e with e_i < q.
inline std::size_t order_log_q(const GroupSchemePresentation& G) { return G.generators(); }

/// The presentation is étale iff its Jacobian d(z^q - Cz)/dz = -C is
/// invertible.
inline bool presentation_is_etale(const GroupSchemePresentation& G) { return inverse(G.C).has_value(); }

inline bool is_etale(const FinShtuka& V) { return inverse(V.F).has_value(); }

/// F·F^{(q)}·...·F^{(q^{n-1})}; the n-fold iterate of v -> F v^{(q)} is
/// v -> P·v^{(q^n)}.
inline ElemMatrix iterate_matrix(const ElemMatrix& F, std::size_t n) {
  ElemMatrix P = identity_matrix(F.zero().ring(), F.rows());
  ElemMatrix tw = F;
  for (std::size_t i = 0; i < n; ++i) {
    P = P * tw;
    tw = frob(tw);
  }
  return P;
}

inline bool is_nilpotent(const FinShtuka& V) { return iterate_matrix(V.F, V.dim()).is_zero(); }

/// Basis (columns) of the image of a matrix over a field.
inline std::vector<std::vector<Elem>> column_space(const ElemMatrix& m) {
  auto e = detail::rref(m.transpose());
  std::vector<std::vector<Elem>> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.m.row(r));
  return out;
}

struct ConnectedEtaleSplit {
  FinShtuka nil, et;
  ElemMatrix nil_basis, et_basis;  // columns span the two summands in V
};

/// Fitting decomposition of the semilinear operator: V_et = image and
/// V_nil = kernel of the n-fold iterate v -> P v^{(q^n)}. Both summands are
/// stable; F restricts to an invertible map on V_et and a nilpotent one on
/// V_nil.
inline ConnectedEtaleSplit connected_etale_split(const FinShtuka& V) {
  const Ring& k = V.ring;
  const std::size_t n = V.dim();
  ElemMatrix P = iterate_matrix(V.F, n);
  auto img = column_space(P);
  auto ker = kernel(P);
  auto to_matrix = [&](const std::vector<std::vector<Elem>>& cols) {
    ElemMatrix B = zero_matrix(k, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) B.set_column(j, cols[j]);
    return B;
  };
  // tau^n v = P v^{(q^n)} vanishes iff v^{(q^n)} lies in ker P.
  ElemMatrix Bn = frob_inverse(to_matrix(ker), n), Be = to_matrix(img);
  // tau(B x) = F B^{(q)} x^{(q)}; express F·B^{(q)} in the basis B.
  auto restrict = [&](const ElemMatrix& B) {
    ElemMatrix img_cols = V.F * frob(B);
    ElemMatrix F2 = zero_matrix(k, B.cols(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
      auto x = solve(B, img_cols.column(j));
      require(x.has_value(), ErrorKind::PreconditionViolated, "summand is not tau-stable");
      F2.set_column(j, *x);
    }
    return F2;
  };
  return {FinShtuka(k, restrict(Bn)), FinShtuka(k, restrict(Be)), Bn, Be};
}

/// Restriction of scalars of the semilinear map v -> F v^{(q)} - v on L^n to
/// an F_p-matrix, with L a field containing k.
inline FpMatrix tau_minus_identity(const ElemMatrix& F, const Ring& L) {
  const std::size_t n = F.rows(), m = L.dim();
  ElemMatrix FL = lift(F, L);
  FpMatrix A(n * m, n * m, L.p());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<u32> e(m, 0);
      e[c] = 1;
      Elem x(L, e), xq = x.frob();
      for (std::size_t i = 0; i < n; ++i) {
        Elem y = FL(i, j) * xq;
        if (i == j) y -= x;
        for (std::size_t cc = 0; cc < m; ++cc) A(i * m + cc, j * m + c) = y.coords()[cc];
      }
    }
  return A;
}

/// F_p-basis of V^tau(L) = {v in L^n : v = F v^{(q)}}; since V^tau is an
/// F_q-space, its F_p-dimension is q_log times its F_q-dimension.
inline std::vector<std::vector<Elem>> tau_invariants_fp(const FinShtuka& V, const Ring& L) {
  const std::size_t n = V.dim(), m = L.dim();
  std::vector<std::vector<Elem>> out;
  for (const auto& v : tau_minus_identity(V.F, L).kernel()) {
    std::vector<Elem> x;
    for (std::size_t j = 0; j < n; ++j)
      x.emplace_back(L, std::vector<u32>(v.begin() + static_cast<std::ptrdiff_t>(j * m),
                                         v.begin() + static_cast<std::ptrdiff_t>((j + 1) * m)));
    out.push_back(std::move(x));
  }
  return out;
}

/// F_q-basis of V^tau(k_m): an F_p-basis is reduced to an F_q-basis by
/// greedy selection modulo the F_q-span.
inline std::vector<std::vector<Elem>> tau_invariants(const FinShtuka& V, std::size_t m) {
  require(is_etale(V), ErrorKind::NotEtale, "tau-invariants are taken of étale shtukas");
  Ring L = extension_field(V.ring, m);
  auto fp = tau_invariants_fp(V, L);
  const std::size_t n = V.dim(), dl = L.dim();
  auto fq = L.fq_basis();
  FpSpan span(n * dl, L.p());
  std::vector<std::vector<Elem>> out;
  for (const auto& v : fp) {
    std::vector<u32> flat;
    for (const auto& x : v) flat.insert(flat.end(), x.coords().begin(), x.coords().end());
    if (span.contains(flat)) continue;
    out.push_back(v);
    for (const auto& c : fq) {
      std::vector<u32> g;
      for (const auto& x : v) {
        Elem y = c * x;
        g.insert(g.end(), y.coords().begin(), y.coords().end());
      }
      span.insert(g);
    }
  }
  return out;
}

/// coker(F) = omega of Dr_q(V): dimension n - rank F, with a basis of V
/// complementary to the image (standard basis vectors of non-pivot rows).
struct OmegaSpace {
  std::size_t dim;
  std::vector<std::vector<Elem>> basis;
};

inline OmegaSpace omega(const FinShtuka& V) {
  const Ring& k = V.ring;
  const std::size_t n = V.dim();
  auto img = column_space(V.F);
  std::vector<std::vector<Elem>> basis;
  // greedy completion of the image to V by standard vectors
  ElemMatrix acc = zero_matrix(k, n, img.size());
  for (std::size_t j = 0; j < img.size(); ++j) acc.set_column(j, img[j]);
  std::size_t r = img.size();
  for (std::size_t i = 0; i < n; ++i) {
    ElemMatrix ext = zero_matrix(k, n, acc.cols() + 1);
    for (std::size_t j = 0; j < acc.cols(); ++j) ext.set_column(j, acc.column(j));
    std::vector<Elem> e(n, k.zero());
    e[i] = k.one();
    ext.set_column(acc.cols(), e);
    if (rank(ext) > r) {
      acc = ext;
      ++r;
      basis.push_back(e);
    }
  }
  return {n - img.size(), std::move(basis)};
}

/// Points of Dr_q(V) over L: solutions of z^{(q)} = C z in L^n, as an
/// F_p-basis.
inline std::vector<std::vector<Elem>> presentation_points_basis(const GroupSchemePresentation& G, const Ring& L) {
  const std::size_t n = G.generators(), m = L.dim();
  ElemMatrix CL = lift(G.C, L);
  FpMatrix A(n * m, n * m, L.p());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<u32> e(m, 0);
      e[c] = 1;
      Elem x(L, e), xq = x.frob();
      for (std::size_t i = 0; i < n; ++i) {
        Elem y = -(CL(i, j) * x);
        if (i == j) y += xq;
        for (std::size_t cc = 0; cc < m; ++cc) A(i * m + cc, j * m + c) = y.coords()[cc];
      }
    }
  std::vector<std::vector<Elem>> out;
  for (const auto& v : A.kernel()) {
    std::vector<Elem> x;
    for (std::size_t j = 0; j < n; ++j)
      x.emplace_back(L, std::vector<u32>(v.begin() + static_cast<std::ptrdiff_t>(j * m),
                                         v.begin() + static_cast<std::ptrdiff_t>((j + 1) * m)));
    out.push_back(std::move(x));
  }
  return out;
}

/// log_q of the number of geometric points of Dr_q(V): the étale rank.
inline std::size_t etale_rank(const FinShtuka& V) { return column_space(iterate_matrix(V.F, V.dim())).size(); }

/// Least m such that every tau-invariant of V, and every point of Dr_q(V),
/// is rational over the degree-m extension k_m. With e = [k : F_q], the
/// e-fold iterate of tau on V_et is v -> P v^{(|k|)} with P = P_e over k,
/// so rationality over k_m holds iff P^m = I. Returns nullopt past the cap.
inline std::optional<std::size_t> splitting_degree(const FinShtuka& V, std::size_t cap) {
  auto split = connected_etale_split(V);
  const FinShtuka& E = split.et;
  const Ring& k = V.ring;
  const std::size_t e = k.degree_over_fq();
  if (E.dim() == 0) return 1;
  ElemMatrix step = iterate_matrix(E.F, e);
  ElemMatrix acc = step;
  const ElemMatrix I = identity_matrix(k, E.dim());
  for (std::size_t j = 1; j <= cap; ++j) {
    if (acc == I) return j;
    acc = acc * step;
  }
  return std::nullopt;
}

}  // namespace drinfeld
