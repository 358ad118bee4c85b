#pragma once

// Seeded random objects for property checks. All draws go through one
// std::mt19937_64, so a seed fixes every sample.

#include <random>
#include <vector>

#include "drinfeld/tmodule.hpp"

namespace drinfeld::sample {

inline Elem random_elem(const Ring& R, std::mt19937_64& rng) {
  std::vector<u32> c(R.dim());
  for (auto& x : c) x = static_cast<u32>(rng() % R.p());
  return Elem(R, std::move(c));
}

inline Elem random_unit(const Ring& R, std::mt19937_64& rng) {
  for (;;) {
    Elem x = random_elem(R, rng);
    if (x.is_unit()) return x;
  }
}

inline SkewPoly random_skew(const Ring& R, std::size_t deg, std::mt19937_64& rng) {
  std::vector<Elem> c;
  for (std::size_t i = 0; i <= deg; ++i) c.push_back(random_elem(R, rng));
  return SkewPoly(R, std::move(c));
}

inline Poly random_poly(const Ring& R, std::size_t deg, std::mt19937_64& rng) {
  std::vector<Elem> c;
  for (std::size_t i = 0; i <= deg; ++i) c.push_back(random_elem(R, rng));
  return Poly(R, std::move(c));
}

/// Coefficients drawn from F_q.
inline Poly random_apoly(const Ring& R, std::size_t deg, std::mt19937_64& rng) {
  auto fq = R.fq_elements();
  std::vector<Elem> c;
  for (std::size_t i = 0; i <= deg; ++i) c.push_back(fq[rng() % fq.size()]);
  return Poly(R, std::move(c));
}

/// phi_t = theta + b_1 tau + ... + b_r tau^r with b_r a unit.
inline TModule random_drinfeld(const Ring& R, std::size_t r, std::mt19937_64& rng) {
  std::vector<Elem> c{R.theta()};
  for (std::size_t i = 1; i < r; ++i) c.push_back(random_elem(R, rng));
  c.push_back(random_unit(R, rng));
  return new_drinfeld(R, SkewPoly(R, std::move(c)));
}

inline TModule carlitz(const Ring& R) { return new_drinfeld(R, SkewPoly(R, {R.theta(), R.one()})); }

/// Monic polynomials of degree exactly `deg` with F_q coefficients.
inline std::vector<Poly> monic_apolys(const Ring& R, std::size_t deg) {
  auto fq = R.fq_elements();
  std::vector<Poly> out;
  std::vector<std::size_t> idx(deg, 0);
  for (;;) {
    std::vector<Elem> c;
    for (auto i : idx) c.push_back(fq[i]);
    c.push_back(R.one());
    out.emplace_back(R, std::move(c));
    std::size_t j = 0;
    while (j < deg && ++idx[j] == fq.size()) idx[j++] = 0;
    if (j == deg) return out;
  }
}

}  // namespace drinfeld::sample
