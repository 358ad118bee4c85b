// Batch interface: one JSON job per invocation, a JSON report on stdout,
// diagnostics on stderr. Exit codes: 0 success, 1 mathematical failure,
// 2 malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "drinfeld/checks.hpp"
#include "drinfeld/json_io.hpp"

namespace {

using namespace drinfeld;
using json_io::json;
using json_io::to_json;

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::MalformedInput, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
  }
}

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& x : pts) {
    json p = json::array();
    for (const auto& c : x) p.push_back(to_json(c));
    a.push_back(p);
  }
  return a;
}

json polys_json(const std::vector<Poly>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(to_json(f));
  return a;
}

json polys_text(const std::vector<Poly>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(f.to_string());
  return a;
}

json module_structure(const TorsionPoints& T) {
  return {{"free", T.free}, {"rank", T.rank}, {"invariants", polys_json(T.invariants)},
          {"invariants_text", polys_text(T.invariants)}};
}

json schemas() {
  const json elem = {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 0}}},
                     {"description", "coordinates over F_p in the ring's canonical basis"}};
  const json poly = {{"type", "array"}, {"items", elem}, {"description", "ascending-degree coefficients"}};
  const json skew = {{"type", "object"}, {"required", {"coeffs"}},
                     {"properties", {{"coeffs", {{"type", "array"}, {"items", elem},
                                                 {"description", "ascending tau-degree"}}}}}};
  auto matrix = [](const json& entry) {
    return json{{"type", "array"}, {"items", {{"type", "array"}, {"items", entry}}}};
  };
  const json ring = {
      {"type", "object"},
      {"required", {"kind", "p", "q", "degree", "modulus", "theta"}},
      {"properties",
       {{"kind", {{"enum", {"finite_field", "truncated", "extension"}}}},
        {"p", {{"type", "integer"}}},
        {"q", {{"type", "integer"}, {"description", "power of p; F_q is the constant field of A = F_q[t]"}}},
        {"degree", {{"type", "integer"}, {"description", "[k : F_q] of the (residue) field"}}},
        {"modulus", {{"type", "array"}, {"description", "monic irreducible over F_p, ascending"}}},
        {"theta", elem},
        {"nil_index", {{"type", "integer"}, {"description", "N in k[e]/(e^N); truncated kind only"}}},
        {"base", {{"description", "extension kind only: the base ring"}}}}}};
  const json module = {{"type", "object"},
                       {"required", {"ring", "d", "phi_t"}},
                       {"properties", {{"ring", ring}, {"d", {{"type", "integer"}}}, {"phi_t", matrix(skew)}}}};
  return {
      {"ring", ring},
      {"ring_element", elem},
      {"poly", poly},
      {"skew_poly", skew},
      {"module", module},
      {"morphism",
       {{"type", "object"},
        {"required", {"from", "to", "F"}},
        {"properties", {{"from", module}, {"to", module}, {"F", matrix(skew)}}}}},
      {"motive",
       {{"type", "object"},
        {"required", {"ring", "r", "T"}},
        {"properties", {{"ring", ring}, {"r", {{"type", "integer"}}}, {"T", matrix(poly)}}}}},
      {"shtuka",
       {{"type", "object"},
        {"required", {"ring", "n", "F"}},
        {"properties", {{"ring", ring}, {"n", {{"type", "integer"}}}, {"F", matrix(elem)}, {"t_action", matrix(elem)}}}}},
      {"certificate",
       {{"type", "object"},
        {"required", {"g", "a", "s", "verified"}},
        {"properties",
         {{"g", {{"description", "morphism"}}}, {"a", poly}, {"s", {{"type", "integer"}}}, {"verified", {{"type", "boolean"}}}}}}},
      {"local",
       {{"type", "object"},
        {"required", {"ring", "p", "n", "Mhat_rank", "Tauhat"}},
        {"properties",
         {{"ring", ring},
          {"p", poly},
          {"n", {{"type", "integer"}}},
          {"Mhat_rank", {{"type", "integer"}}},
          {"omega", poly},
          {"Tauhat", {{"type", "array"}, {"description", "r x r truncated series, ascending in z"}}}}}}},
  };
}

struct Options {
  std::string module, other, map, motive, ideal, prime;
  std::size_t cap = 256, degree = 0, precision = 8, l = 0;
  std::optional<std::size_t> bound;
  u64 seed = 7;
  double scale = 0.1;
};

json run_validate(const Options& o) {
  TModule E = json_io::module_from_json(read_json(o.module));
  return {{"valid", true}, {"drinfeld", E.is_drinfeld()}, {"rank", E.rank()}, {"dim", E.dim()}, {"module", to_json(E)}};
}

json run_motive(const Options& o) {
  TModule E = json_io::module_from_json(read_json(o.module));
  TMotive M = motive_of(E);
  auto rd = rank_dim(M);
  return {{"motive", to_json(M)}, {"rank", rd.r}, {"dim", rd.d}, {"det_T", to_json(det(M.T))}};
}

json run_inverse(const Options& o) {
  TMotive M = json_io::motive_from_json(read_json(o.motive));
  auto res = tmodule_of(M);
  json gens = json::array();
  for (const auto& g : res.generators) gens.push_back(polys_json(g));
  return {{"module", to_json(res.module)}, {"generators", gens}, {"iso", json_io::matrix_to_json(res.iso)}};
}

json run_isogeny_check(const Options& o) {
  TModuleMorphism f = json_io::morphism_from_json(read_json(o.map));
  MotiveMorphism Mf = motive_of(f);
  json out = {{"module_side", is_isogeny_module(f)}, {"motive_side", is_isogeny_motive(Mf)}};
  auto S = smith_normal_form(Mf.U);
  out["smith"] = polys_json(S.diagonal());
  out["smith_text"] = polys_text(S.diagonal());
  if (is_isogeny_motive(Mf)) {
    FinShtuka V = cokernel_shtuka(Mf);
    out["coker_dim"] = V.dim();
    out["separable"] = is_etale(V);
    out["annihilator"] = annihilator(Mf).to_string();
  }
  return out;
}

json run_kernel(const Options& o) {
  TModuleMorphism f = json_io::morphism_from_json(read_json(o.map));
  require(is_isogeny_module(f), ErrorKind::NotAnIsogeny, "kernel points are reported for isogenies");
  MotiveMorphism Mf = motive_of(f);
  FinShtuka V = cokernel_shtuka(Mf);
  auto m = splitting_degree(V, o.cap);
  require(m.has_value(), ErrorKind::ExtensionCapExceeded, "splitting degree exceeds --cap");
  const Poly a = annihilator(Mf);
  auto T = kernel_module(f.source(), f.matrix(), *m, a);
  return {{"degree", *m},
          {"field", to_json(T.field)},
          {"points", points_json(T.points)},
          {"count", T.points.size()},
          {"coker_dim", V.dim()},
          {"etale_rank", etale_rank(V)},
          {"separable", is_etale(V)},
          {"annihilator", a.to_string()},
          {"module", module_structure(T)},
          {"shtuka", to_json(V)}};
}

json run_torsion(const Options& o) {
  TModule E = json_io::module_from_json(read_json(o.module));
  require(!o.ideal.empty(), ErrorKind::MalformedInput, "--ideal is required");
  Poly a = json_io::poly_from_json_or_text(E.ring(), json(o.ideal));
  require(!a.is_zero() && a.over_fq(), ErrorKind::MalformedInput, "the ideal generator must be a nonzero element of F_q[t]");
  const std::size_t m = o.degree ? o.degree : torsion_splitting_degree(E, a, o.cap);
  auto T = torsion_points(E, a, m);
  FinShtuka V = torsion_shtuka(E, a);
  json mod = module_structure(T);
  mod["over"] = quotient_ring_name(a);
  return {{"degree", m},
          {"field", to_json(T.field)},
          {"points", points_json(T.points)},
          {"count", T.points.size()},
          {"etale", is_etale(V)},
          {"module", mod}};
}

json run_dual(const Options& o) {
  TModuleMorphism f = json_io::morphism_from_json(read_json(o.map));
  auto c = dual_isogeny_module(f);
  json out = to_json(c);
  require(c.verified(), ErrorKind::NotAnIsogeny, "dual certificate did not verify");
  return out;
}

json run_isogenous(const Options& o) {
  TModule E = json_io::module_from_json(read_json(o.module));
  TModule E2 = json_io::module_from_json(read_json(o.other));
  const std::size_t B = o.bound.value_or(default_search_bound(E));
  auto f = are_isogenous(E, E2, B);
  json out = {{"isogenous", f.has_value()}, {"bound", B}};
  if (f) out["map"] = to_json(*f);
  return out;
}

json run_frobenius(const Options& o) {
  TModule E = json_io::module_from_json(read_json(o.module));
  const std::size_t l = o.l ? o.l : E.ring().degree_over_fq();
  TMotive M = motive_of(E);
  auto pi = frobenius_isogeny(M, l);
  bool central = true;
  const std::size_t B = o.bound.value_or(2 * E.rank());
  auto basis = endomorphism_basis(E, B);
  for (const auto& f : basis) {
    auto Mf = motive_of(f);
    central = central && pi.U * Mf.U == Mf.U * pi.U;
  }
  return {{"l", l},
          {"pi", to_json(pi)},
          {"inseparable", is_nilpotent(cokernel_shtuka(pi))},
          {"central", central},
          {"end_basis_size", basis.size()},
          {"bound", B}};
}

json run_local(const Options& o) {
  TMotive M;
  std::optional<TModule> E;
  if (!o.module.empty()) {
    E = json_io::module_from_json(read_json(o.module));
    M = motive_of(*E);
  } else {
    require(!o.motive.empty(), ErrorKind::MalformedInput, "--module or --motive is required");
    M = json_io::motive_from_json(read_json(o.motive));
  }
  Poly p = o.prime.empty() ? min_poly_fq(M.ring.theta()) : json_io::poly_from_json_or_text(M.ring, json(o.prime));
  auto L = local_shtuka_at(M, p, o.precision);
  auto inv = local_invariants(L);
  return {{"local", to_json(L)},
          {"formal", is_formal(L)},
          {"divisible", divisibility_check(L)},
          {"order_exponents", inv.order_exponents},
          {"omega_dim", inv.omega_dim},
          {"etale_rank", inv.etale_rank}};
}

std::pair<json, int> run_selfcheck(const Options& o) {
  auto results = checks::run_all(o.seed, checks::Scale{o.scale});
  json suites = json::array();
  int failed = 0;
  for (const auto& c : results) {
    suites.push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}, {"passed", c.passed()},
                      {"note", c.note}});
    failed += !c.passed();
  }
  return {{{"seed", o.seed}, {"scale", o.scale}, {"suites", suites}, {"passed", failed == 0},
           {"failed_suites", failed}},
          failed ? 1 : 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld modules, t-motives, isogenies and shtukas over finite fields"};
  app.require_subcommand(0, 1);
  bool schema = false;
  app.add_flag("--schema", schema, "Print the JSON schemas and exit");
  Options o;

  auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  auto* validate = add("validate", "Parse and check a t-module");
  validate->add_option("--module", o.module, "t-module JSON")->required();
  auto* motive = add("motive", "Compute the t-motive of a t-module");
  motive->add_option("--module", o.module, "t-module JSON")->required();
  auto* inverse = add("inverse", "Recover a t-module from its motive");
  inverse->add_option("--motive", o.motive, "motive JSON")->required();
  auto* iso_check = add("isogeny-check", "Isogeny predicates on both sides");
  iso_check->add_option("--map", o.map, "morphism JSON")->required();
  auto* kernel = add("kernel", "Kernel points of an isogeny and the cokernel shtuka");
  kernel->add_option("--map", o.map, "morphism JSON")->required();
  kernel->add_option("--cap", o.cap, "extension-degree cap");
  auto* torsion = add("torsion", "a-torsion points and their module structure");
  torsion->add_option("--module", o.module, "t-module JSON")->required();
  torsion->add_option("--ideal", o.ideal, "generator a of the ideal, e.g. \"t^2+1\"")->required();
  torsion->add_option("--degree", o.degree, "extension degree (default: splitting degree)");
  torsion->add_option("--cap", o.cap, "extension-degree cap");
  auto* dual = add("dual", "Dual isogeny with certificate");
  dual->add_option("--map", o.map, "morphism JSON")->required();
  auto* isogenous = add("isogenous", "Bounded isogeny search");
  isogenous->add_option("--module", o.module, "source t-module JSON")->required();
  isogenous->add_option("--other", o.other, "target t-module JSON")->required();
  isogenous->add_option("--bound", o.bound, "tau-degree bound");
  auto* frobenius = add("frobenius", "q^l-Frobenius isogeny and its centrality");
  frobenius->add_option("--module", o.module, "t-module JSON")->required();
  frobenius->add_option("--l", o.l, "exponent l (default [k : F_q])");
  frobenius->add_option("--bound", o.bound, "tau-degree bound for End");
  auto* local = add("local", "Truncated local shtuka and its invariants");
  local->add_option("--module", o.module, "t-module JSON");
  local->add_option("--motive", o.motive, "motive JSON");
  local->add_option("--prime", o.prime, "prime p (default: the characteristic prime)");
  local->add_option("--precision", o.precision, "z-adic precision n")->check(CLI::PositiveNumber);
  auto* selfcheck = add("selfcheck", "Property suites at reduced size");
  selfcheck->add_option("--seed", o.seed, "random seed");
  selfcheck->add_option("--scale", o.scale, "fraction of the acceptance sample sizes")->check(CLI::Range(0.001, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (schema) {
    std::cout << json_io::dump(schemas());
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    json out;
    int code = 0;
    if (cmd == "validate") out = run_validate(o);
    else if (cmd == "motive") out = run_motive(o);
    else if (cmd == "inverse") out = run_inverse(o);
    else if (cmd == "isogeny-check") out = run_isogeny_check(o);
    else if (cmd == "kernel") out = run_kernel(o);
    else if (cmd == "torsion") out = run_torsion(o);
    else if (cmd == "dual") out = run_dual(o);
    else if (cmd == "isogenous") out = run_isogenous(o);
    else if (cmd == "frobenius") out = run_frobenius(o);
    else if (cmd == "local") out = run_local(o);
    else std::tie(out, code) = run_selfcheck(o);
    std::cout << json_io::dump(out);
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << json_io::dump({{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
    return e.malformed_input() ? 2 : 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << json_io::dump({{"error", "MalformedInput"}, {"message", e.what()}});
    return 2;
  }
}
