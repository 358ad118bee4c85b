#pragma once

// Coefficient rings: finite fields F_p[x]/(f), towers of finite fields, and
// truncated local algebras k[e]/(e^N), each carrying the q-Frobenius and the
// image theta of t under the characteristic map.

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/fp_linalg.hpp"

namespace drinfeld {

enum class RingKind { prime, field, truncated };

namespace detail {

struct RingData {
  RingKind kind = RingKind::prime;
  u32 p = 2;
  u64 q = 2;
  unsigned q_log = 1;
  std::shared_ptr<const RingData> base;
  std::size_t deg = 1;        // degree over base (nil index for truncated)
  std::size_t dim = 1;        // dimension over F_p
  std::vector<u32> modulus;   // field kind: deg+1 blocks of base->dim coordinates, monic
  std::vector<u32> theta;
  std::vector<std::vector<u32>> fq_basis;
};

using RingPtr = std::shared_ptr<const RingData>;

inline bool same_structure(const RingData& a, const RingData& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.p != b.p || a.q != b.q || a.deg != b.deg || a.dim != b.dim) return false;
  if (a.modulus != b.modulus || a.theta != b.theta) return false;
  if (static_cast<bool>(a.base) != static_cast<bool>(b.base)) return false;
  return !a.base || same_structure(*a.base, *b.base);
}

inline bool is_zero_raw(const u32* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return false;
  return true;
}

inline void add_raw(u32 p, u32* dst, const u32* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = add_mod(dst[i], src[i], p);
}

inline void sub_raw(u32 p, u32* dst, const u32* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = sub_mod(dst[i], src[i], p);
}

/// out = a * b in R. `out` may not alias a or b.
inline void mul_raw(const RingData& R, const u32* a, const u32* b, u32* out) {
  const u32 p = R.p;
  if (R.kind == RingKind::prime) {
    out[0] = mul_mod(a[0], b[0], p);
    return;
  }
  const std::size_t n = R.deg;
  const RingData& B = *R.base;
  const std::size_t bd = B.dim;
  std::vector<u32> prod((2 * n - 1) * bd, 0);
  std::vector<u32> tmp(bd);
  if (bd == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[j]) prod[i + j] = add_mod(prod[i + j], mul_mod(a[i], b[j], p), p);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero_raw(a + i * bd, bd)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_zero_raw(b + j * bd, bd)) continue;
        mul_raw(B, a + i * bd, b + j * bd, tmp.data());
        add_raw(p, prod.data() + (i + j) * bd, tmp.data(), bd);
      }
    }
  }
  if (R.kind == RingKind::field) {
    const u32* mod = R.modulus.data();
    for (std::size_t i = 2 * n - 1; i-- > n;) {
      const u32* c = prod.data() + i * bd;
      if (is_zero_raw(c, bd)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_zero_raw(mod + j * bd, bd)) continue;
        if (bd == 1) {
          prod[i - n + j] = sub_mod(prod[i - n + j], mul_mod(c[0], mod[j], p), p);
        } else {
          mul_raw(B, c, mod + j * bd, tmp.data());
          sub_raw(p, prod.data() + (i - n + j) * bd, tmp.data(), bd);
        }
      }
    }
  }
  std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n * bd), out);
}

inline std::vector<u32> pow_raw(const RingData& R, std::vector<u32> base, u64 e) {
  std::vector<u32> result(R.dim, 0);
  result[0] = 1 % R.p;
  std::vector<u32> tmp(R.dim);
  while (e) {
    if (e & 1) {
      mul_raw(R, result.data(), base.data(), tmp.data());
      result.swap(tmp);
    }
    e >>= 1;
    if (e) {
      mul_raw(R, base.data(), base.data(), tmp.data());
      base.swap(tmp);
    }
  }
  return result;
}

// Minimal dense F_p[x] arithmetic used to certify moduli at construction.
namespace fpx {

using P = std::vector<u32>;

inline void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline P mod(P a, const P& f, u32 p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  u32 inv = inv_mod(f.back(), p);
  while (a.size() > n) {
    u32 c = mul_mod(a.back(), inv, p);
    std::size_t shift = a.size() - 1 - n;
    for (std::size_t j = 0; j <= n; ++j) a[shift + j] = sub_mod(a[shift + j], mul_mod(c, f[j], p), p);
    trim(a);
  }
  return a;
}

inline P mulmod(const P& a, const P& b, const P& f, u32 p) {
  if (a.empty() || b.empty()) return {};
  P c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = add_mod(c[i + j], mul_mod(a[i], b[j], p), p);
  return mod(std::move(c), f, p);
}

inline P powmod(P a, u64 e, const P& f, u32 p) {
  P r = mod(P{1}, f, p);
  a = mod(std::move(a), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, f, p);
    e >>= 1;
    if (e) a = mulmod(a, a, f, p);
  }
  return r;
}

inline P gcd(P a, P b, u32 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    P r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test: f of degree n is irreducible iff x^{p^n} = x mod f and
/// gcd(x^{p^{n/l}} - x, f) = 1 for every prime l | n.
inline bool is_irreducible(const P& f, u32 p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  std::vector<P> frob_pows(n + 1);
  frob_pows[0] = mod(P{0, 1}, f, p);
  for (std::size_t i = 1; i <= n; ++i) frob_pows[i] = powmod(frob_pows[i - 1], p, f, p);
  if (frob_pows[n] != mod(P{0, 1}, f, p)) return false;
  std::size_t m = n;
  for (std::size_t l = 2; l <= m; ++l) {
    if (m % l) continue;
    while (m % l == 0) m /= l;
    P h = frob_pows[n / l];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = sub_mod(h[1], 1, p);
    trim(h);
    P g = gcd(h, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace fpx
}  // namespace detail

class Elem;

/// Handle to an immutable coefficient ring. Copies share the underlying
/// description.
class Ring {
 public:
  Ring() = default;
  explicit Ring(detail::RingPtr d) : d_(std::move(d)) {}

  /// F_p itself, used as the bottom of every tower.
  static Ring prime_field(u32 p) {
    require(p < (1u << 31) && is_prime_u32(p), ErrorKind::InvalidRing, "p must be a prime below 2^31");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::prime;
    d->p = p;
    d->q = p;
    d->q_log = 1;
    d->deg = 1;
    d->dim = 1;
    d->theta = {0};
    d->fq_basis = {{1}};
    return Ring(std::move(d));
  }

  /// F_p[x]/(modulus) with q-Frobenius. The modulus is certified irreducible
  /// and its degree must be a multiple of log_p q so that F_q is a subfield.
  static Ring finite_field(u32 p, u64 q, std::vector<u32> modulus, std::vector<u32> theta);

  /// residue[e]/(e^N) over a finite field built by finite_field.
  static Ring truncated(const Ring& residue_field, std::size_t nil_index, std::vector<u32> theta);

  /// Field extension base[y]/(modulus) with modulus given as monic
  /// coordinates over `base`. Irreducibility is the caller's obligation;
  /// use extension_field() for a certified construction.
  static Ring extension_unchecked(const Ring& base, std::vector<u32> modulus_coords);

  bool valid() const { return static_cast<bool>(d_); }
  RingKind kind() const { return d_->kind; }
  bool is_field() const { return d_->kind != RingKind::truncated; }
  u32 p() const { return d_->p; }
  u64 q() const { return d_->q; }
  unsigned q_log() const { return d_->q_log; }
  std::size_t dim() const { return d_->dim; }
  std::size_t degree() const { return d_->deg; }
  std::size_t nil_index() const { return d_->kind == RingKind::truncated ? d_->deg : 1; }
  bool has_base() const { return static_cast<bool>(d_->base); }
  Ring base() const { return Ring(d_->base); }
  const std::vector<u32>& modulus_coords() const { return d_->modulus; }

  /// Residue field: the base of a truncated ring, the ring itself otherwise.
  Ring residue_field() const { return kind() == RingKind::truncated ? base() : *this; }

  /// [k : F_q] for a field k.
  std::size_t degree_over_fq() const { return d_->dim / d_->q_log; }

  /// |R| when it fits in 63 bits.
  std::optional<u64> order() const {
    u64 r = 1;
    for (std::size_t i = 0; i < d_->dim; ++i) {
      if (r > (u64{1} << 62) / d_->p) return std::nullopt;
      r *= d_->p;
    }
    return r;
  }

  Elem zero() const;
  Elem one() const;
  Elem from_int(long long v) const;
  Elem from_coords(std::vector<u32> c) const;
  Elem theta() const;
  /// Class of x (fields) or e (truncated rings).
  Elem generator() const;
  /// Image of an element of base() under the structural inclusion.
  Elem embed(const Elem& x) const;
  /// Inverse of embed on its image.
  std::optional<Elem> restrict(const Elem& x) const;

  /// The q elements of F_q inside R, sorted by coordinates.
  std::vector<Elem> fq_elements() const;
  /// An F_p-basis of F_q inside R.
  std::vector<Elem> fq_basis() const;
  bool in_fq(const Elem& x) const;

  /// Every element, in coordinate-counter order. Only for small rings.
  std::vector<Elem> elements() const;

  std::string describe() const;

  const detail::RingData& data() const { return *d_; }
  const detail::RingPtr& ptr() const { return d_; }

  friend bool operator==(const Ring& a, const Ring& b) {
    if (a.d_ == b.d_) return true;
    if (!a.d_ || !b.d_) return false;
    return detail::same_structure(*a.d_, *b.d_);
  }

 private:
  detail::RingPtr d_;
};

/// Element of a coefficient ring as a dense F_p-coordinate vector.
class Elem {
 public:
  Elem() = default;
  Elem(Ring r, std::vector<u32> c) : r_(std::move(r)), c_(std::move(c)) {}

  const Ring& ring() const { return r_; }
  const std::vector<u32>& coords() const { return c_; }

  bool is_zero() const { return detail::is_zero_raw(c_.data(), c_.size()); }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return detail::is_zero_raw(c_.data() + 1, c_.size() - 1);
  }

  Elem operator-() const {
    Elem r = *this;
    for (auto& x : r.c_) x = neg_mod(x, r_.p());
    return r;
  }
  Elem& operator+=(const Elem& o) {
    check(o);
    detail::add_raw(r_.p(), c_.data(), o.c_.data(), c_.size());
    return *this;
  }
  Elem& operator-=(const Elem& o) {
    check(o);
    detail::sub_raw(r_.p(), c_.data(), o.c_.data(), c_.size());
    return *this;
  }
  Elem& operator*=(const Elem& o) {
    *this = *this * o;
    return *this;
  }
  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(const Elem& a, const Elem& b) {
    a.check(b);
    std::vector<u32> out(a.c_.size());
    detail::mul_raw(a.r_.data(), a.c_.data(), b.c_.data(), out.data());
    return Elem(a.r_, std::move(out));
  }

  /// Multiplication by an element of the prime field.
  Elem scaled(u32 s) const {
    Elem r = *this;
    for (auto& x : r.c_) x = mul_mod(x, s % r_.p(), r_.p());
    return r;
  }

  Elem pow(u64 e) const { return Elem(r_, detail::pow_raw(r_.data(), c_, e)); }

  /// x -> x^q, iterated.
  Elem frob(std::size_t times = 1) const {
    Elem r = *this;
    if (r_.kind() == RingKind::prime) return r;
    for (std::size_t i = 0; i < times; ++i) r = r.pow(r_.q());
    return r;
  }

  /// Inverse of the q-Frobenius on a finite field.
  Elem frob_inverse(std::size_t times = 1) const {
    require(r_.is_field(), ErrorKind::UnsupportedBase, "Frobenius is invertible only on fields");
    const std::size_t n = r_.degree_over_fq();
    return frob((n - times % n) % n);
  }

  bool is_unit() const {
    if (r_.kind() == RingKind::truncated) return !detail::is_zero_raw(c_.data(), r_.base().dim());
    return !is_zero();
  }
  bool is_nilpotent() const { return !is_unit(); }

  Elem inverse() const;

  friend Elem operator/(const Elem& a, const Elem& b) { return a * b.inverse(); }

  friend bool operator==(const Elem& a, const Elem& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const Elem& a, const Elem& b) { return a.c_ <=> b.c_; }

 private:
  void check(const Elem& o) const {
    if (r_.ptr() != o.r_.ptr() && !(r_ == o.r_)) fail(ErrorKind::RingMismatch, "operands live in different rings");
  }

  Ring r_;
  std::vector<u32> c_;
};

namespace detail {

inline std::vector<std::vector<u32>> compute_fq_basis(const RingPtr& d) {
  Ring R(d);
  FpMatrix m(d->dim, d->dim, d->p);
  for (std::size_t j = 0; j < d->dim; ++j) {
    std::vector<u32> e(d->dim, 0);
    e[j] = 1;
    Elem x(R, e);
    Elem y = x.frob() - x;
    m.set_column(j, y.coords());
  }
  return m.kernel();
}

// Polynomials over a base field as coefficient vectors, used for inversion
// in field extensions by the extended Euclidean algorithm.
using EPoly = std::vector<Elem>;

inline void trim(EPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::pair<EPoly, EPoly> divmod(EPoly a, const EPoly& b) {
  trim(a);
  EPoly quo;
  if (a.size() < b.size()) return {quo, a};
  quo.assign(a.size() - b.size() + 1, b.back().ring().zero());
  Elem inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Elem c = a.back() * inv;
    quo[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  return {quo, a};
}

inline EPoly mul(const EPoly& a, const EPoly& b) {
  if (a.empty() || b.empty()) return {};
  EPoly c(a.size() + b.size() - 1, a[0].ring().zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline EPoly sub(EPoly a, const EPoly& b, const Ring& R) {
  if (a.size() < b.size()) a.resize(b.size(), R.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace detail

inline Elem Elem::inverse() const {
  require(is_unit(), ErrorKind::PreconditionViolated, "inverse of a non-unit");
  const auto& d = r_.data();
  if (d.kind == RingKind::prime) return Elem(r_, {inv_mod(c_[0], d.p)});
  Ring B = r_.base();
  const std::size_t bd = B.dim();
  if (d.kind == RingKind::truncated) {
    Elem u(B, std::vector<u32>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(bd)));
    Elem y = r_.embed(u.inverse());
    Elem two = r_.from_int(2);
    for (std::size_t prec = 1; prec < d.deg; prec *= 2) y = y * (two - *this * y);
    return y;
  }
  detail::EPoly f, x;
  for (std::size_t i = 0; i <= d.deg; ++i)
    f.emplace_back(B, std::vector<u32>(d.modulus.begin() + static_cast<std::ptrdiff_t>(i * bd),
                                       d.modulus.begin() + static_cast<std::ptrdiff_t>((i + 1) * bd)));
  for (std::size_t i = 0; i < d.deg; ++i)
    x.emplace_back(B, std::vector<u32>(c_.begin() + static_cast<std::ptrdiff_t>(i * bd),
                                       c_.begin() + static_cast<std::ptrdiff_t>((i + 1) * bd)));
  detail::trim(x);
  detail::EPoly r0 = f, r1 = x, s0, s1{B.one()};
  while (!r1.empty()) {
    auto [quo, rem] = detail::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    auto s2 = detail::sub(s0, detail::mul(quo, s1), B);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Elem g_inv = r0[0].inverse();
  std::vector<u32> out(d.dim, 0);
  for (std::size_t i = 0; i < s0.size(); ++i) {
    Elem c = s0[i] * g_inv;
    std::copy(c.coords().begin(), c.coords().end(), out.begin() + static_cast<std::ptrdiff_t>(i * bd));
  }
  return Elem(r_, std::move(out));
}

inline Ring Ring::finite_field(u32 p, u64 q, std::vector<u32> modulus, std::vector<u32> theta) {
  require(p < (1u << 31) && is_prime_u32(p), ErrorKind::InvalidRing, "p must be a prime below 2^31");
  unsigned e = 0;
  u64 qq = q;
  while (qq > 1 && qq % p == 0) {
    qq /= p;
    ++e;
  }
  require(qq == 1 && e >= 1, ErrorKind::InvalidRing, "q must be a positive power of p");
  require(modulus.size() >= 2, ErrorKind::InvalidRing, "modulus must have degree >= 1");
  for (u32 c : modulus) require(c < p, ErrorKind::InvalidRing, "modulus coefficient out of range");
  require(modulus.back() == 1, ErrorKind::InvalidRing, "modulus must be monic");
  const std::size_t n = modulus.size() - 1;
  require(n % e == 0, ErrorKind::InvalidRing, "field degree over F_p must be a multiple of log_p q");
  require(detail::fpx::is_irreducible(modulus, p), ErrorKind::InvalidRing, "modulus is not irreducible over F_p");
  require(theta.size() <= n, ErrorKind::InvalidRing, "theta has too many coordinates");
  for (u32 c : theta) require(c < p, ErrorKind::InvalidRing, "theta coordinate out of range");
  theta.resize(n, 0);
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::field;
  d->p = p;
  d->q = q;
  d->q_log = e;
  d->base = prime_field(p).ptr();
  d->deg = n;
  d->dim = n;
  d->modulus = std::move(modulus);
  d->theta = std::move(theta);
  d->fq_basis = detail::compute_fq_basis(d);
  require(d->fq_basis.size() == e, ErrorKind::InvalidRing, "F_q is not a subfield");
  return Ring(std::move(d));
}

inline Ring Ring::truncated(const Ring& residue_field, std::size_t nil_index, std::vector<u32> theta) {
  require(residue_field.valid() && residue_field.kind() == RingKind::field, ErrorKind::InvalidRing,
          "truncated rings need a finite field as residue field");
  require(nil_index >= 1, ErrorKind::InvalidRing, "nil_index must be >= 1");
  const std::size_t dim = residue_field.dim() * nil_index;
  require(theta.size() <= dim, ErrorKind::InvalidRing, "theta has too many coordinates");
  for (u32 c : theta) require(c < residue_field.p(), ErrorKind::InvalidRing, "theta coordinate out of range");
  theta.resize(dim, 0);
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::truncated;
  d->p = residue_field.p();
  d->q = residue_field.q();
  d->q_log = residue_field.q_log();
  d->base = residue_field.ptr();
  d->deg = nil_index;
  d->dim = dim;
  d->theta = std::move(theta);
  d->fq_basis = detail::compute_fq_basis(d);
  return Ring(std::move(d));
}

inline Ring Ring::extension_unchecked(const Ring& base, std::vector<u32> modulus_coords) {
  require(base.is_field(), ErrorKind::InvalidRing, "extensions are built over fields");
  const std::size_t bd = base.dim();
  require(modulus_coords.size() % bd == 0 && modulus_coords.size() >= 2 * bd, ErrorKind::InvalidRing,
          "malformed extension modulus");
  const std::size_t n = modulus_coords.size() / bd - 1;
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::field;
  d->p = base.p();
  d->q = base.q();
  d->q_log = base.q_log();
  d->base = base.ptr();
  d->deg = n;
  d->dim = n * bd;
  d->modulus = std::move(modulus_coords);
  d->theta.assign(d->dim, 0);
  std::copy(base.data().theta.begin(), base.data().theta.end(), d->theta.begin());
  d->fq_basis = detail::compute_fq_basis(d);
  return Ring(std::move(d));
}

inline Elem Ring::zero() const { return Elem(*this, std::vector<u32>(dim(), 0)); }

inline Elem Ring::one() const {
  std::vector<u32> c(dim(), 0);
  c[0] = 1;
  return Elem(*this, std::move(c));
}

inline Elem Ring::from_int(long long v) const {
  long long m = v % static_cast<long long>(p());
  if (m < 0) m += p();
  std::vector<u32> c(dim(), 0);
  c[0] = static_cast<u32>(m);
  return Elem(*this, std::move(c));
}

inline Elem Ring::from_coords(std::vector<u32> c) const {
  require(c.size() <= dim(), ErrorKind::MalformedInput, "too many coordinates for ring element");
  for (u32 x : c) require(x < p(), ErrorKind::MalformedInput, "coordinate out of range");
  c.resize(dim(), 0);
  return Elem(*this, std::move(c));
}

inline Elem Ring::theta() const { return Elem(*this, d_->theta); }

inline Elem Ring::generator() const {
  std::vector<u32> c(dim(), 0);
  if (kind() == RingKind::prime) return Elem(*this, std::move(c));
  const std::size_t bd = base().dim();
  if (d_->deg > 1) {
    c[bd] = 1;
  } else if (kind() == RingKind::field) {
    // degree one: x is the root of x + m0, i.e. -m0
    for (std::size_t i = 0; i < bd; ++i) c[i] = neg_mod(d_->modulus[i], p());
  }
  return Elem(*this, std::move(c));
}

inline Elem Ring::embed(const Elem& x) const {
  require(has_base() && x.ring() == base(), ErrorKind::RingMismatch, "element is not from the base ring");
  std::vector<u32> c(dim(), 0);
  std::copy(x.coords().begin(), x.coords().end(), c.begin());
  return Elem(*this, std::move(c));
}

inline std::optional<Elem> Ring::restrict(const Elem& x) const {
  const std::size_t bd = base().dim();
  if (!detail::is_zero_raw(x.coords().data() + bd, dim() - bd)) return std::nullopt;
  return Elem(base(), std::vector<u32>(x.coords().begin(), x.coords().begin() + static_cast<std::ptrdiff_t>(bd)));
}

inline std::vector<Elem> Ring::fq_basis() const {
  std::vector<Elem> out;
  for (const auto& b : d_->fq_basis) out.emplace_back(*this, b);
  return out;
}

inline std::vector<Elem> Ring::fq_elements() const {
  const auto& basis = d_->fq_basis;
  std::vector<Elem> out;
  std::vector<u32> digits(basis.size(), 0);
  for (;;) {
    std::vector<u32> c(dim(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) c[j] = add_mod(c[j], mul_mod(digits[i], basis[i][j], p()), p());
    out.emplace_back(*this, std::move(c));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool Ring::in_fq(const Elem& x) const { return x.frob() == x; }

inline std::vector<Elem> Ring::elements() const {
  auto ord = order();
  require(ord && *ord <= (u64{1} << 24), ErrorKind::PreconditionViolated, "ring too large to enumerate");
  std::vector<Elem> out;
  out.reserve(*ord);
  std::vector<u32> c(dim(), 0);
  for (;;) {
    out.emplace_back(*this, c);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p()) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

inline std::string Ring::describe() const {
  switch (kind()) {
    case RingKind::prime: return "F_" + std::to_string(p());
    case RingKind::field: {
      auto ord = order();
      if (!has_base() || base().kind() == RingKind::prime)
        return ord ? "F_" + std::to_string(*ord) : "F_" + std::to_string(p()) + "^" + std::to_string(dim());
      return base().describe() + "[y]/(deg " + std::to_string(degree()) + ")";
    }
    case RingKind::truncated:
      return base().describe() + "[e]/(e^" + std::to_string(degree()) + ")";
  }
  return "?";
}

/// Image of x under the chain of structural inclusions into L. x must live
/// in L or in one of the rings below it.
inline Elem lift_to(const Ring& L, const Elem& x) {
  if (x.ring().ptr() == L.ptr() || x.ring() == L) return x;
  require(L.has_base() && L.kind() != RingKind::prime, ErrorKind::RingMismatch, "element does not embed into ring");
  return L.embed(lift_to(L.base(), x));
}

/// True when x's ring is L or lies below L in its tower.
inline bool embeds_into(const Ring& small, const Ring& L) {
  if (small == L) return true;
  if (!L.has_base() || L.kind() == RingKind::prime) return false;
  return embeds_into(small, L.base());
}

}  // namespace drinfeld
