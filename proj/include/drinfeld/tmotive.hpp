#pragma once

// Effective t-motives over a finite field k: M = k[t]^r with
// tau(x) = T·x^{(q)}. The functor E -> M(E) = k{tau}^{1 x d}, with t acting
// by right multiplication by phi_t and tau by left multiplication, uses the
// k[t]-basis b_{l*d+i} = tau^l e_i (0 <= l < deg_tau phi_t).

#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/shtuka.hpp"
#include "drinfeld/smith.hpp"
#include "drinfeld/tmodule.hpp"

namespace drinfeld {

struct TMotive {
  Ring ring;
  PolyMatrix T;
  /// The t-module this motive was computed from, when known; coordinates
  /// then refer to the basis tau^l e_i of M(origin).
  std::optional<TModule> origin;

  std::size_t rank() const { return T.rows(); }
};

struct MotiveMorphism {
  TMotive source, target;
  PolyMatrix U;  // target.rank() x source.rank()
};

/// Checks U·T_source = T_target·U^{(q)}.
inline MotiveMorphism make_motive_morphism(TMotive source, TMotive target, PolyMatrix U) {
  require(U.rows() == target.rank() && U.cols() == source.rank(), ErrorKind::MalformedInput,
          "motive morphism has the wrong shape");
  require(U * source.T == target.T * frob(U), ErrorKind::NotAMorphism, "U does not commute with tau");
  return {std::move(source), std::move(target), std::move(U)};
}

/// g ∘ f for f: M1 -> M2 and g: M2 -> M3.
inline MotiveMorphism compose(const MotiveMorphism& g, const MotiveMorphism& f) {
  require(f.target.T == g.source.T, ErrorKind::PreconditionViolated, "motive morphisms are not composable");
  return {f.source, g.target, g.U * f.U};
}

namespace detail {

/// Coordinates and realizations in M(E) = R{tau}^{1 x d}.
class MotiveBasis {
 public:
  explicit MotiveBasis(const TModule& E) : E_(E), k_(E.ring()) {
    require(k_.is_field(), ErrorKind::UnsupportedBase, "motives are computed over fields");
    const std::size_t d = E.dim();
    s_ = static_cast<std::size_t>(tau_degree(E.phi_t()));
    if (d > 1)
      require(E.has_invertible_top(), ErrorKind::UnsupportedShape,
              "phi_t must have an invertible top coefficient matrix");
  }

  std::size_t d() const { return E_.dim(); }
  std::size_t s() const { return s_; }
  std::size_t rank() const { return s_ * d(); }

  SkewMatrix basis_row(std::size_t l, std::size_t i) const {
    SkewMatrix m = skew_zero(k_, 1, d());
    m(0, i) = SkewPoly::tau(k_, l);
    return m;
  }

  /// k[t]-coordinates of a row m in R{tau}^{1 x d}: m = sum_k h_k·phi_t^k
  /// with deg h_k < s, read off by repeated right division.
  std::vector<Poly> coords(SkewMatrix m) const {
    const std::size_t r = rank(), n = d();
    std::vector<std::vector<Elem>> cs(r);
    while (!m.is_zero()) {
      SkewMatrix h;
      if (n == 1) {
        auto [g, rem] = right_divmod(m(0, 0), E_.phi_t()(0, 0));
        m(0, 0) = g;
        h = skew_zero(k_, 1, 1);
        h(0, 0) = rem;
      } else {
        auto [g, rem] = skew_matrix_right_divmod(m, E_.phi_t());
        m = g;
        h = rem;
      }
      for (std::size_t l = 0; l < s_; ++l)
        for (std::size_t i = 0; i < n; ++i) cs[l * n + i].push_back(h(0, i).coeff(l));
    }
    std::vector<Poly> out;
    for (auto& c : cs) out.emplace_back(k_, std::move(c));
    return out;
  }

  /// The row sum_j x_j(t)·b_j, with t·m = m·phi_t.
  SkewMatrix realize(const std::vector<Poly>& x) const {
    const std::size_t n = d();
    SkewMatrix acc = skew_zero(k_, 1, n);
    for (std::size_t l = 0; l < s_; ++l)
      for (std::size_t i = 0; i < n; ++i) {
        const Poly& p = x[l * n + i];
        if (p.is_zero()) continue;
        SkewMatrix cur = basis_row(l, i);
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
          if (k > 0) cur = cur * E_.phi_t();
          if (!p.coeff(k).is_zero()) acc = acc + cur.scaled(SkewPoly::constant(p.coeff(k)));
        }
      }
    return acc;
  }

 private:
  TModule E_;
  Ring k_;
  std::size_t s_ = 0;
};

}  // namespace detail

/// M(E) with T column (l, i) = coordinates of tau·tau^l e_i.
inline TMotive motive_of(const TModule& E) {
  detail::MotiveBasis B(E);
  const std::size_t r = B.rank();
  PolyMatrix T = poly_zero(E.ring(), r, r);
  for (std::size_t l = 0; l < B.s(); ++l)
    for (std::size_t i = 0; i < B.d(); ++i) T.set_column(l * B.d() + i, B.coords(B.basis_row(l + 1, i)));
  return {E.ring(), std::move(T), E};
}

/// M(f): M(E') -> M(E), m' -> m'·F; column j holds the coordinates of b'_j·F.
inline MotiveMorphism motive_of(const TModuleMorphism& f) {
  TMotive src = motive_of(f.target()), dst = motive_of(f.source());
  detail::MotiveBasis Bs(f.source()), Bt(f.target());
  PolyMatrix U = poly_zero(f.source().ring(), Bs.rank(), Bt.rank());
  for (std::size_t l = 0; l < Bt.s(); ++l)
    for (std::size_t i = 0; i < Bt.d(); ++i)
      U.set_column(l * Bt.d() + i, Bs.coords(Bt.basis_row(l, i) * f.matrix()));
  return make_motive_morphism(std::move(src), std::move(dst), std::move(U));
}

/// Realization in M(origin) of a coordinate vector.
inline SkewMatrix realize(const TMotive& M, const std::vector<Poly>& x) {
  require(M.origin.has_value(), ErrorKind::PreconditionViolated, "motive has no recorded t-module");
  return detail::MotiveBasis(*M.origin).realize(x);
}

inline Poly t_minus_theta(const Ring& k) { return Poly(k, {-k.theta(), k.one()}); }

struct RankDim {
  std::size_t r, d;
  std::vector<Poly> elementary_divisors;
};

/// (rank, dimension); d = deg det T, and every elementary divisor of T must
/// be a power of (t - theta).
inline RankDim rank_dim(const TMotive& M) {
  const Ring& k = M.ring;
  auto D = smith_normal_form(M.T).diagonal();
  const Poly J = t_minus_theta(k);
  std::size_t d = 0;
  for (const auto& e : D) {
    require(!e.is_zero(), ErrorKind::NotEffective, "det T vanishes");
    require(e == J.pow(static_cast<u64>(e.degree())), ErrorKind::NotEffective,
            "elementary divisor " + e.to_string() + " is not a power of (t - theta)");
    d += static_cast<std::size_t>(e.degree());
  }
  return {M.rank(), d, D};
}

/// (tau(x))^{(q^0)}: tau applied to a coordinate vector.
inline std::vector<Poly> tau_apply(const TMotive& M, const std::vector<Poly>& x) {
  std::vector<Poly> xq;
  for (const auto& p : x) xq.push_back(p.frob());
  return mat_vec(M.T, xq);
}

struct TModuleOfResult {
  TModule module;
  /// Generators m_i of M over k{tau} in M's coordinates.
  std::vector<std::vector<Poly>> generators;
  /// Isomorphism M(module) -> M compatible with tau: C·T' = T·C^{(q)}.
  PolyMatrix iso;
  /// When M records its t-module E: the matrix with rows realize(m_i),
  /// a unit of R{tau}^{d x d} with conj·phi_t = phi'_t·conj.
  std::optional<SkewMatrix> conjugator;
};

namespace detail {

inline std::vector<Elem> constant_coeffs(const std::vector<Poly>& v) {
  std::vector<Elem> out;
  for (const auto& p : v) out.push_back(p.coeff(0));
  return out;
}

inline std::vector<Poly> constant_vector(const std::vector<Elem>& v) {
  std::vector<Poly> out;
  for (const auto& x : v) out.push_back(Poly::constant(x));
  return out;
}

/// Constant vectors u whose iterates tau^j u stay constant for j <= depth:
/// S_0 = k^r, S_{j+1} = sigma^{-1}{w : T_k w = 0 (k >= 1), T_0 w in S_j}.
/// Returns the successive spaces as column bases until dimension <= d or
/// stabilization.
inline std::vector<std::vector<std::vector<Elem>>> constant_orbit_spaces(const TMotive& M, std::size_t d) {
  const Ring& k = M.ring;
  const std::size_t r = M.rank();
  const int deg = max_degree(M.T);
  std::vector<std::vector<std::vector<Elem>>> spaces;
  std::vector<std::vector<Elem>> S;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Elem> e(r, k.zero());
    e[i] = k.one();
    S.push_back(e);
  }
  spaces.push_back(S);
  while (S.size() > d) {
    // w with T_k w = 0 for k >= 1 and T_0 w in span(S): stack equations.
    // Unknowns (w, y) with T_0 w - S y = 0.
    const std::size_t ns = S.size();
    const std::size_t rows = r * static_cast<std::size_t>(std::max(deg, 0)) + r;
    ElemMatrix A = zero_matrix(k, rows, r + ns);
    for (int kk = 1; kk <= deg; ++kk)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) A(static_cast<std::size_t>(kk - 1) * r + i, j) = M.T(i, j).coeff(static_cast<std::size_t>(kk));
    const std::size_t base = r * static_cast<std::size_t>(std::max(deg, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) A(base + i, j) = M.T(i, j).coeff(0);
      for (std::size_t j = 0; j < ns; ++j) A(base + i, r + j) = -S[j][i];
    }
    std::vector<std::vector<Elem>> W;
    {
      auto ker = kernel(A);
      ElemMatrix Wm = zero_matrix(k, r, ker.size());
      for (std::size_t c = 0; c < ker.size(); ++c)
        for (std::size_t i = 0; i < r; ++i) Wm(i, c) = ker[c][i];
      W = column_space(Wm);
    }
    std::vector<std::vector<Elem>> next;
    for (auto& w : W) {
      for (auto& x : w) x = x.frob_inverse();
      next.push_back(w);
    }
    if (next.size() == S.size()) break;
    S = std::move(next);
    spaces.push_back(S);
  }
  return spaces;
}

}  // namespace detail

/// Expresses v = sum_i P_i(tau)·m_i; returns nullopt if the recursion does
/// not terminate within `bound` steps.
class GeneratorSystem {
 public:
  GeneratorSystem(const TMotive& M, std::vector<std::vector<Poly>> gens)
      : M_(M), cok_(M.T), gens_(std::move(gens)) {
    const Ring& k = M.ring;
    const std::size_t d = cok_.dim();
    require(gens_.size() == d, ErrorKind::NotAbelian, "wrong number of generators");
    ElemMatrix L = zero_matrix(k, d, d);
    for (std::size_t i = 0; i < d; ++i) L.set_column(i, cok_.coords(gens_[i]));
    auto inv = inverse(L);
    require(inv.has_value(), ErrorKind::NotAbelian, "generators do not span coker tau");
    Linv_ = *inv;
  }

  std::optional<std::vector<SkewPoly>> express(std::vector<Poly> v, std::size_t bound) const {
    const Ring& k = M_.ring;
    const std::size_t d = gens_.size();
    std::vector<std::vector<Elem>> layers;
    for (std::size_t step = 0;; ++step) {
      bool zero = true;
      for (const auto& p : v) zero = zero && p.is_zero();
      if (zero) break;
      if (step >= bound) return std::nullopt;
      auto a = mat_vec(Linv_, cok_.coords(v));
      for (std::size_t i = 0; i < d; ++i)
        if (!a[i].is_zero())
          for (std::size_t j = 0; j < v.size(); ++j) v[j] -= gens_[i][j] * a[i];
      auto y = cok_.solve(v);
      require(y.has_value(), ErrorKind::NotAbelian, "residual is not in the image of tau");
      for (auto& p : *y) p = p.frob(k.degree_over_fq() - 1);
      v = std::move(*y);
      layers.push_back(std::move(a));
    }
    std::vector<SkewPoly> out;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Elem> c;
      for (std::size_t l = 0; l < layers.size(); ++l) c.push_back(layers[l][i].frob(l));
      out.emplace_back(k, std::move(c));
    }
    return out;
  }

 private:
  TMotive M_;
  Cokernel cok_;
  std::vector<std::vector<Poly>> gens_;
  ElemMatrix Linv_;
};

namespace detail {

inline std::optional<TModuleOfResult> try_generators(const TMotive& M, std::vector<std::vector<Poly>> gens,
                                                     std::size_t bound) {
  const Ring& k = M.ring;
  const std::size_t d = gens.size(), r = M.rank();
  std::optional<GeneratorSystem> sys;
  try {
    sys.emplace(M, gens);
  } catch (const Error&) {
    return std::nullopt;
  }
  SkewMatrix phi = skew_zero(k, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Poly> tv = gens[i];
    for (auto& p : tv) p = p * Poly::var(k);
    auto P = sys->express(tv, bound);
    if (!P) return std::nullopt;
    for (std::size_t j = 0; j < d; ++j) phi(i, j) = (*P)[j];
  }
  TModule E;
  try {
    E = TModule::create(k, phi);
    if (d > 1 && !E.has_invertible_top()) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  if (E.rank() != r) return std::nullopt;
  // C column (l, i) = coordinates of tau^l m_i in M.
  const std::size_t s = r / d;
  PolyMatrix C = poly_zero(k, r, r);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Poly> cur = gens[i];
    for (std::size_t l = 0; l < s; ++l) {
      C.set_column(l * d + i, cur);
      cur = tau_apply(M, cur);
    }
  }
  Poly dC = det(C);
  if (dC.degree() != 0) return std::nullopt;
  TMotive ME = motive_of(E);
  if (!(C * ME.T == M.T * frob(C))) return std::nullopt;
  TModuleOfResult res{E, std::move(gens), std::move(C), std::nullopt};
  return res;
}

}  // namespace detail

/// The t-module whose motive is M, via generators of M over k{tau} taken
/// from constant vectors whose tau-orbit stays constant longest.
inline TModuleOfResult tmodule_of(const TMotive& M) {
  const Ring& k = M.ring;
  require(k.is_field(), ErrorKind::UnsupportedBase, "motives are computed over fields");
  RankDim rd = rank_dim(M);
  require(rd.d >= 1, ErrorKind::NotAbelian, "coker tau is zero: no t-module of positive dimension");
  const std::size_t d = rd.d, r = rd.r;
  Cokernel cok(M.T);
  const std::size_t bound = 4 * r * (d + 1) * (static_cast<std::size_t>(std::max(max_degree(M.T), 1)) + 2) + 16;

  auto spaces = detail::constant_orbit_spaces(M, d);
  // Try the deepest space first, then shallower ones, choosing a subset of
  // its basis that maps to a basis of coker tau.
  for (std::size_t idx = spaces.size(); idx-- > 0;) {
    const auto& S = spaces[idx];
    if (S.size() < d) continue;
    std::vector<std::vector<Poly>> gens;
    ElemMatrix acc = zero_matrix(k, d, 0);
    for (const auto& u : S) {
      auto c = cok.coords(detail::constant_vector(u));
      ElemMatrix ext = zero_matrix(k, d, acc.cols() + 1);
      for (std::size_t j = 0; j < acc.cols(); ++j) ext.set_column(j, acc.column(j));
      ext.set_column(acc.cols(), c);
      if (rank(ext) > acc.cols()) {
        acc = ext;
        gens.push_back(detail::constant_vector(u));
        if (gens.size() == d) break;
      }
    }
    if (gens.size() < d) continue;
    if (auto res = detail::try_generators(M, gens, bound)) {
      if (M.origin) {
        SkewMatrix conj = skew_zero(k, d, M.origin->dim());
        detail::MotiveBasis B(*M.origin);
        for (std::size_t i = 0; i < d; ++i) {
          SkewMatrix row = B.realize(res->generators[i]);
          for (std::size_t j = 0; j < conj.cols(); ++j) conj(i, j) = row(0, j);
        }
        require(conj * M.origin->phi_t() == res->module.phi_t() * conj, ErrorKind::NotAbelian,
                "conjugating unit does not intertwine the t-actions");
        res->conjugator = std::move(conj);
      }
      return *res;
    }
  }
  // Fallback: lifts of the Smith cokernel basis.
  std::vector<std::vector<Poly>> gens;
  for (std::size_t b = 0; b < d; ++b) {
    std::vector<Elem> e(d, k.zero());
    e[b] = k.one();
    gens.push_back(cok.lift(e));
  }
  if (auto res = detail::try_generators(M, gens, bound)) return *res;
  fail(ErrorKind::NotAbelian, "no free k{tau}-basis found among the candidate lifts");
}

inline bool is_isogeny_motive(const MotiveMorphism& f) {
  if (f.source.rank() != f.target.rank()) return false;
  return !det(f.U).is_zero();
}

/// V = coker U with tau descended from the target, plus the t-action.
inline FinShtuka cokernel_shtuka(const MotiveMorphism& f) {
  require(is_isogeny_motive(f), ErrorKind::NotAnIsogeny, "morphism is not an isogeny");
  const Ring& k = f.target.ring;
  Cokernel cok(f.U);
  const std::size_t n = cok.dim();
  ElemMatrix F = zero_matrix(k, n, n);
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<Elem> e(n, k.zero());
    e[b] = k.one();
    F.set_column(b, cok.coords(tau_apply(f.target, cok.lift(e))));
  }
  return FinShtuka(k, F, cok.t_action());
}

inline bool is_separable_motive(const MotiveMorphism& f) { return is_etale(cokernel_shtuka(f)); }

/// Least common multiple of the Frobenius conjugates of a monic polynomial:
/// the smallest multiple with coefficients in F_q.
inline Poly fq_closure(const Poly& a) {
  Poly acc = a.monic(), cur = a.monic();
  for (std::size_t i = 1; i < a.ring().degree_over_fq(); ++i) {
    cur = cur.frob();
    acc = lcm(acc, cur);
  }
  return acc;
}

/// Largest elementary divisor of U, made F_q-rational (it already is for
/// every morphism tested; the closure is a no-op then).
inline Poly annihilator(const MotiveMorphism& f) {
  require(is_isogeny_motive(f), ErrorKind::NotAnIsogeny, "morphism is not an isogeny");
  auto D = smith_normal_form(f.U).diagonal();
  if (D.empty()) return Poly::constant(f.U.zero().ring().one());
  return fq_closure(D.back());
}

inline bool is_isogeny_module(const TModuleMorphism& f) {
  require(f.source().ring().is_field(), ErrorKind::UnsupportedBase, "isogeny test needs a field base");
  if (f.source().is_drinfeld() && f.target().is_drinfeld()) return !f.is_zero();
  if (f.source().dim() != f.target().dim()) return false;
  return is_isogeny_motive(motive_of(f));
}

inline bool is_separable_module(const TModuleMorphism& f) {
  require(is_isogeny_module(f), ErrorKind::NotAnIsogeny, "morphism is not an isogeny");
  return lie_invertible(f);
}

}  // namespace drinfeld
