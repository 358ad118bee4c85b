#pragma once

// Dense univariate polynomials over a coefficient ring. Used both for
// k[t] (motive coordinates) and for elements of A = F_q[t], which are
// polynomials whose coefficients lie in the subfield F_q.

#include <cctype>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "drinfeld/ring.hpp"

namespace drinfeld {

class Poly {
 public:
  Poly() = default;
  explicit Poly(Ring R) : R_(std::move(R)) {}
  Poly(Ring R, std::vector<Elem> c) : R_(std::move(R)), c_(std::move(c)) { trim(); }

  static Poly constant(const Elem& c) { return Poly(c.ring(), {c}); }
  static Poly monomial(const Elem& c, std::size_t n) {
    std::vector<Elem> v(n + 1, c.ring().zero());
    v[n] = c;
    return Poly(c.ring(), std::move(v));
  }
  /// The variable t.
  static Poly var(const Ring& R) { return monomial(R.one(), 1); }
  /// Polynomial with prime-field integer coefficients, ascending degree.
  static Poly from_ints(const Ring& R, const std::vector<long long>& c) {
    std::vector<Elem> v;
    for (long long x : c) v.push_back(R.from_int(x));
    return Poly(R, std::move(v));
  }

  const Ring& ring() const { return R_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R_.zero(); }
  const Elem& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inverse();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.R_);
    std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, a.R_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.R_, std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Poly& a, const Elem& s) {
    Poly r = a;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }
  friend Poly operator*(const Elem& s, const Poly& a) { return a * s; }

  Poly pow(u64 e) const {
    Poly r = constant(R_.one()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Quotient and remainder; the divisor's leading coefficient must be a unit.
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    require(!b.is_zero(), ErrorKind::PreconditionViolated, "polynomial division by zero");
    require(b.lead().is_unit(), ErrorKind::NonUnitLeadingCoefficient, "divisor has non-unit leading coefficient");
    Poly r = *this;
    if (r.degree() < b.degree()) return {Poly(R_), r};
    std::vector<Elem> q(static_cast<std::size_t>(r.degree() - b.degree() + 1), R_.zero());
    Elem inv = b.lead().inverse();
    for (int n = r.degree(); n >= b.degree(); --n) {
      if (static_cast<int>(r.c_.size()) <= n) continue;
      Elem c = r.c_[static_cast<std::size_t>(n)] * inv;
      std::size_t shift = static_cast<std::size_t>(n - b.degree());
      q[shift] = c;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[shift + j] -= c * b.c_[j];
      r.trim();
    }
    return {Poly(R_, std::move(q)), r};
  }
  Poly operator%(const Poly& b) const { return divmod(b).second; }
  Poly operator/(const Poly& b) const { return divmod(b).first; }
  bool divides(const Poly& b) const { return (b % *this).is_zero(); }

  /// Coefficientwise q-Frobenius (the twist x -> x^{(q)}, fixing t).
  Poly frob(std::size_t times = 1) const {
    Poly r = *this;
    for (auto& x : r.c_) x = x.frob(times);
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(R_);
    std::vector<Elem> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i].scaled(static_cast<u32>(i % R_.p())));
    return Poly(R_, std::move(d));
  }

  /// Horner evaluation at x, where x lives in R or a ring containing R.
  Elem eval(const Elem& x) const {
    const Ring& S = x.ring();
    Elem acc = S.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + lift_to(S, c_[i]);
    return acc;
  }

  /// Image of this polynomial in a ring containing R.
  Poly lift(const Ring& S) const {
    std::vector<Elem> v;
    for (const auto& x : c_) v.push_back(lift_to(S, x));
    return Poly(S, std::move(v));
  }

  /// All coefficients lie in F_q.
  bool over_fq() const {
    for (const auto& x : c_)
      if (!(x.frob() == x)) return false;
    return true;
  }

  std::string to_string(const std::string& var = "t") const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Ring R_;
  std::vector<Elem> c_;
};

/// Monic gcd over a field.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// (g, s, u) with s·a + u·b = g = monic gcd(a, b), over a field.
inline std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  const Ring& R = a.ring();
  Poly r0 = a, r1 = b, s0 = Poly::constant(R.one()), s1(R), u0(R), u1 = Poly::constant(R.one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1, u2 = u0 - q * u1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  Elem inv = r0.lead().inverse();
  return {r0 * inv, s0 * inv, u0 * inv};
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.ring());
  return ((a * b) / gcd(a, b)).monic();
}

/// Prints an element as an integer when it lies in the prime field and as
/// its coordinate list otherwise.
inline std::string elem_to_string(const Elem& x) {
  const auto& c = x.coords();
  bool prime = true;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i]) prime = false;
  if (prime) return std::to_string(c.empty() ? 0 : c[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

inline std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string coef = elem_to_string(c_[i]);
    if (i == 0) {
      out += coef;
      continue;
    }
    if (coef != "1") out += coef + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

/// Parses expressions like "t^2+t+1", "2*t^3 - t + 1" with integer
/// coefficients reduced mod p.
inline Poly parse_poly(const Ring& R, const std::string& text, char var = 't') {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  require(!s.empty(), ErrorKind::MalformedInput, "empty polynomial");
  Poly acc(R);
  std::size_t i = 0;
  auto read_int = [&](long long& v) {
    std::size_t start = i;
    v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = (v * 10 + (s[i] - '0')) % 1000000007LL;
      ++i;
    }
    return i > start;
  };
  while (i < s.size()) {
    long long sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    long long coef = 1, digits = 0;
    bool have_coef = read_int(digits);
    if (have_coef) coef = digits;
    std::size_t exp = 0;
    if (i < s.size() && s[i] == '*') {
      require(have_coef, ErrorKind::MalformedInput, "dangling '*' in polynomial");
      ++i;
    }
    if (i < s.size() && s[i] == var) {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        long long e = 0;
        require(read_int(e), ErrorKind::MalformedInput, "missing exponent in polynomial");
        exp = static_cast<std::size_t>(e);
      }
    } else {
      require(have_coef, ErrorKind::MalformedInput, "unexpected character in polynomial '" + text + "'");
    }
    acc += Poly::monomial(R.from_int(sign * (coef % static_cast<long long>(R.p()))), exp);
    require(i == s.size() || s[i] == '+' || s[i] == '-', ErrorKind::MalformedInput,
            "unexpected character in polynomial '" + text + "'");
  }
  return acc;
}

/// gamma(a) = a(theta).
inline Elem gamma(const Ring& R, const Poly& a) { return a.lift(R).eval(R.theta()); }

}  // namespace drinfeld
