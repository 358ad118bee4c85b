#pragma once

// JSON encodings of rings, elements, polynomials, t-modules, morphisms,
// motives, finite shtukas, dual certificates and local shtukas. Every
// encoder has a decoder that returns an equal value; malformed input raises
// ErrorKind::MalformedInput. Uses nlohmann::json, whose objects keep keys
// sorted, so dumps are byte-for-byte deterministic.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "drinfeld/drinfeld.hpp"
#include "drinfeld/local_shtuka.hpp"

namespace drinfeld::json_io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::MalformedInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline u64 as_uint(const json& j, const char* what) {
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0), ErrorKind::MalformedInput,
          std::string(what) + " must be a nonnegative integer");
  return j.get<u64>();
}

inline std::vector<u32> as_coords(const json& j, const char* what) {
  require(j.is_array(), ErrorKind::MalformedInput, std::string(what) + " must be an array of integers");
  std::vector<u32> out;
  for (const auto& x : j) {
    const u64 v = as_uint(x, what);
    require(v < (u64{1} << 31), ErrorKind::MalformedInput, std::string(what) + " entry out of range");
    out.push_back(static_cast<u32>(v));
  }
  return out;
}

inline const json& as_array(const json& j, const char* what) {
  require(j.is_array(), ErrorKind::MalformedInput, std::string(what) + " must be an array");
  return j;
}

}  // namespace detail

// ---- rings and elements ----------------------------------------------------

inline json to_json(const Ring& R) {
  switch (R.kind()) {
    case RingKind::prime:
      return {{"kind", "finite_field"}, {"p", R.p()}, {"q", R.q()}, {"degree", 1}, {"modulus", {0, 1}}, {"theta", {0}}};
    case RingKind::field:
      if (R.has_base() && R.base().kind() != RingKind::prime)
        return {{"kind", "extension"}, {"base", to_json(R.base())}, {"modulus", R.modulus_coords()}};
      return {{"kind", "finite_field"}, {"p", R.p()},           {"q", R.q()},
              {"degree", R.degree_over_fq()}, {"modulus", R.modulus_coords()}, {"theta", R.theta().coords()}};
    case RingKind::truncated: {
      const Ring k = R.residue_field();
      return {{"kind", "truncated"},  {"p", R.p()}, {"q", R.q()}, {"degree", k.degree_over_fq()},
              {"modulus", k.modulus_coords()}, {"theta", R.theta().coords()}, {"nil_index", R.nil_index()}};
    }
  }
  return {};
}

inline Ring ring_from_json(const json& j) {
  const std::string kind = detail::field(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "extension") {
    Ring base = ring_from_json(detail::field(j, "base"));
    auto mod = detail::as_coords(detail::field(j, "modulus"), "modulus");
    require(mod.size() % base.dim() == 0 && mod.size() >= 2 * base.dim(), ErrorKind::MalformedInput,
            "extension modulus has the wrong length");
    for (u32 c : mod) require(c < base.p(), ErrorKind::MalformedInput, "modulus coordinate out of range");
    std::vector<Elem> c;
    for (std::size_t i = 0; i < mod.size(); i += base.dim())
      c.emplace_back(base, std::vector<u32>(mod.begin() + static_cast<std::ptrdiff_t>(i),
                                            mod.begin() + static_cast<std::ptrdiff_t>(i + base.dim())));
    Poly m(base, std::move(c));
    require(m.lead().is_one() && is_irreducible_over(m), ErrorKind::MalformedInput,
            "extension modulus must be monic irreducible");
    return Ring::extension_unchecked(base, std::move(mod));
  }
  require(kind == "finite_field" || kind == "truncated", ErrorKind::MalformedInput,
          "ring kind must be finite_field, truncated or extension");
  const auto p = static_cast<u32>(detail::as_uint(detail::field(j, "p"), "p"));
  const u64 q = detail::as_uint(detail::field(j, "q"), "q");
  const auto modulus = detail::as_coords(detail::field(j, "modulus"), "modulus");
  const auto theta = detail::as_coords(detail::field(j, "theta"), "theta");
  const u64 degree = detail::as_uint(detail::field(j, "degree"), "degree");
  Ring k = [&] {
    try {
      // The residue field of a truncated ring carries the residue of theta,
      // which is the leading block of coordinates.
      std::vector<u32> th = theta;
      if (kind == "truncated" && modulus.size() >= 1 && th.size() > modulus.size() - 1) th.resize(modulus.size() - 1);
      return Ring::finite_field(p, q, modulus, th);
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedInput, std::string("invalid ring: ") + e.what());
    }
  }();
  require(k.degree_over_fq() == degree, ErrorKind::MalformedInput, "degree does not match the modulus and q");
  if (kind == "finite_field") return k;
  const u64 N = detail::as_uint(detail::field(j, "nil_index"), "nil_index");
  try {
    return Ring::truncated(k, N, theta);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("invalid ring: ") + e.what());
  }
}

inline json to_json(const Elem& x) { return x.coords(); }

inline Elem elem_from_json(const Ring& R, const json& j) {
  auto c = detail::as_coords(j, "ring element");
  require(c.size() <= R.dim(), ErrorKind::MalformedInput, "ring element has too many coordinates");
  for (u32 v : c) require(v < R.p(), ErrorKind::MalformedInput, "ring element coordinate out of range");
  c.resize(R.dim(), 0);
  return Elem(R, std::move(c));
}

// ---- polynomials and matrices ---------------------------------------------

inline json to_json(const Poly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(to_json(c));
  return a;
}

inline Poly poly_from_json(const Ring& R, const json& j) {
  std::vector<Elem> c;
  for (const auto& x : detail::as_array(j, "polynomial")) c.push_back(elem_from_json(R, x));
  return Poly(R, std::move(c));
}

/// Accepts either a coefficient array or a string such as "t^2+1".
inline Poly poly_from_json_or_text(const Ring& R, const json& j) {
  if (!j.is_string()) return poly_from_json(R, j);
  try {
    return parse_poly(R, j.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("cannot parse polynomial: ") + e.what());
  }
}

inline json to_json(const SkewPoly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(to_json(c));
  return {{"coeffs", a}};
}

inline SkewPoly skew_from_json(const Ring& R, const json& j) {
  std::vector<Elem> c;
  for (const auto& x : detail::as_array(detail::field(j, "coeffs"), "coeffs")) c.push_back(elem_from_json(R, x));
  return SkewPoly(R, std::move(c));
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

/// Reads a rectangular rows x cols array; a 0-row matrix needs `cols`.
template <class T, class Parse>
Matrix<T> matrix_from_json(const json& j, T zero, Parse&& parse, std::optional<std::size_t> cols = std::nullopt) {
  const json& rows = detail::as_array(j, "matrix");
  const std::size_t r = rows.size();
  std::size_t c = cols.value_or(r == 0 ? 0 : detail::as_array(rows[0], "matrix row").size());
  Matrix<T> m(r, c, std::move(zero));
  for (std::size_t i = 0; i < r; ++i) {
    const json& row = detail::as_array(rows[i], "matrix row");
    require(row.size() == c, ErrorKind::MalformedInput, "matrix rows have different lengths");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse(row[k]);
  }
  return m;
}

inline ElemMatrix elem_matrix_from_json(const Ring& R, const json& j) {
  return matrix_from_json<Elem>(j, R.zero(), [&](const json& x) { return elem_from_json(R, x); });
}

inline PolyMatrix poly_matrix_from_json(const Ring& R, const json& j) {
  return matrix_from_json<Poly>(j, Poly(R), [&](const json& x) { return poly_from_json(R, x); });
}

inline SkewMatrix skew_matrix_from_json(const Ring& R, const json& j) {
  return matrix_from_json<SkewPoly>(j, SkewPoly(R), [&](const json& x) { return skew_from_json(R, x); });
}

// ---- t-modules and morphisms ----------------------------------------------

inline json to_json(const TModule& E) {
  return {{"ring", to_json(E.ring())}, {"d", E.dim()}, {"phi_t", matrix_to_json(E.phi_t())}};
}

inline TModule module_from_json(const json& j) {
  Ring R = ring_from_json(detail::field(j, "ring"));
  const u64 d = detail::as_uint(detail::field(j, "d"), "d");
  SkewMatrix phi = skew_matrix_from_json(R, detail::field(j, "phi_t"));
  require(phi.rows() == d && phi.cols() == d, ErrorKind::MalformedInput, "phi_t must be d x d");
  return d == 1 ? new_drinfeld(R, phi(0, 0)) : TModule::create(R, phi);
}

inline json to_json(const TModuleMorphism& f) {
  return {{"from", to_json(f.source())}, {"to", to_json(f.target())}, {"F", matrix_to_json(f.matrix())}};
}

inline TModuleMorphism morphism_from_json(const json& j) {
  TModule E = module_from_json(detail::field(j, "from"));
  TModule E2 = module_from_json(detail::field(j, "to"));
  require(E.ring() == E2.ring(), ErrorKind::MalformedInput, "source and target rings differ");
  SkewMatrix F = skew_matrix_from_json(E.ring(), detail::field(j, "F"));
  require(F.rows() == E2.dim() && F.cols() == E.dim(), ErrorKind::MalformedInput, "F must be d' x d");
  return TModuleMorphism(E, E2, F);
}

// ---- motives and shtukas ---------------------------------------------------

inline json to_json(const TMotive& M) {
  return {{"ring", to_json(M.ring)}, {"r", M.rank()}, {"T", matrix_to_json(M.T)}};
}

inline TMotive motive_from_json(const json& j) {
  Ring R = ring_from_json(detail::field(j, "ring"));
  const u64 r = detail::as_uint(detail::field(j, "r"), "r");
  PolyMatrix T = poly_matrix_from_json(R, detail::field(j, "T"));
  require(T.rows() == r && T.cols() == r, ErrorKind::MalformedInput, "T must be r x r");
  return TMotive{R, std::move(T), std::nullopt};
}

inline json to_json(const MotiveMorphism& f) {
  return {{"from", to_json(f.source)}, {"to", to_json(f.target)}, {"U", matrix_to_json(f.U)}};
}

inline json to_json(const FinShtuka& V) {
  json j = {{"ring", to_json(V.ring)}, {"n", V.dim()}, {"F", matrix_to_json(V.F)}};
  if (V.t_action) j["t_action"] = matrix_to_json(*V.t_action);
  return j;
}

inline FinShtuka shtuka_from_json(const json& j) {
  Ring R = ring_from_json(detail::field(j, "ring"));
  const u64 n = detail::as_uint(detail::field(j, "n"), "n");
  auto parse = [&](const json& x) {
    ElemMatrix m = matrix_from_json<Elem>(x, R.zero(), [&](const json& e) { return elem_from_json(R, e); }, n);
    require(m.rows() == n, ErrorKind::MalformedInput, "shtuka matrices must be n x n");
    return m;
  };
  std::optional<ElemMatrix> t;
  if (j.contains("t_action")) t = parse(j.at("t_action"));
  return FinShtuka(R, parse(detail::field(j, "F")), std::move(t));
}

// ---- certificates and local shtukas ----------------------------------------

inline json to_json(const ModuleDualCertificate& c) {
  return {{"f", to_json(c.f)},       {"g", to_json(c.g)},         {"a", to_json(c.a)},
          {"a_text", c.a.to_string()}, {"s", c.s},                 {"fg_ok", c.fg_ok},
          {"gf_ok", c.gf_ok},        {"minimal", c.minimal},      {"verified", c.verified()}};
}

inline json to_json(const LocalShtuka& L) {
  return {{"ring", to_json(L.ring)}, {"p", to_json(L.p)},           {"n", L.n},
          {"Mhat_rank", L.rank()},  {"omega", to_json(L.omega)},   {"Tauhat", matrix_to_json(L.tauhat)}};
}

inline LocalShtuka local_from_json(const json& j) {
  LocalShtuka L;
  L.ring = ring_from_json(detail::field(j, "ring"));
  L.p = poly_from_json(L.ring, detail::field(j, "p"));
  require(L.p.degree() >= 1 && L.p.over_fq(), ErrorKind::MalformedInput, "p must be a nonconstant polynomial over F_q");
  L.f = static_cast<std::size_t>(L.p.degree());
  L.n = detail::as_uint(detail::field(j, "n"), "n");
  require(L.n >= 1, ErrorKind::MalformedInput, "n must be positive");
  const u64 r = detail::as_uint(detail::field(j, "Mhat_rank"), "Mhat_rank");
  L.omega = series::trunc(poly_from_json(L.ring, detail::field(j, "omega")), L.n);
  L.root = L.omega.coeff(0);
  L.tauhat = series::trunc(poly_matrix_from_json(L.ring, detail::field(j, "Tauhat")), L.n);
  require(L.tauhat.rows() == r && L.tauhat.cols() == r, ErrorKind::MalformedInput, "Tauhat must be r x r");
  L.precision.assign(r, L.n);
  return L;
}

/// Deterministic text form of a report.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace drinfeld::json_io
