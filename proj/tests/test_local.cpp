#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace drinfeld;
using namespace fixtures;

namespace {

std::size_t qpow(std::size_t q, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= q;
  return r;
}

/// Carlitz squared as a direct sum: dimension 2, rank 2.
TModule carlitz_sum(const Ring& k) {
  SkewMatrix phi = skew_zero(k, 2, 2);
  for (std::size_t i = 0; i < 2; ++i) phi(i, i) = SkewPoly(k, {k.theta(), k.one()});
  return TModule::create(k, phi);
}

}  // namespace

TEST(Local, CharPrimeExamples) {
  EXPECT_EQ(char_prime(carlitz(f2())), tpoly(f2(), "t+1"));
  EXPECT_EQ(char_prime(carlitz(f4())), tpoly(f4(), "t^2+t+1"));
  EXPECT_EQ(char_prime(carlitz(f2(0))), tpoly(f2(0), "t"));
}

TEST(Local, CarlitzOverF2) {
  Ring k = f2();
  TMotive M = motive_of(carlitz(k));
  auto L = local_shtuka_at(M, tpoly(k, "t+1"), 3);
  EXPECT_EQ(L.omega, tpoly(k, "t+1"));  // 1 + z
  ASSERT_EQ(L.rank(), 1u);
  EXPECT_EQ(L.tauhat(0, 0), tpoly(k, "t"));  // z
  EXPECT_TRUE(is_formal(L));
  EXPECT_TRUE(divisibility_check(L));
  auto inv = local_invariants(L);
  EXPECT_EQ(inv.order_exponents, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(inv.omega_dim, 1u);
  EXPECT_EQ(inv.etale_rank, 0u);
}

TEST(Local, CarlitzOverF4) {
  Ring k = f4();
  auto L = local_shtuka_at(motive_of(carlitz(k)), tpoly(k, "t^2+t+1"), 2);
  EXPECT_EQ(L.f, 2u);
  EXPECT_EQ(L.omega.coeff(0), w(k));
  EXPECT_EQ(L.omega.coeff(1), k.one());
  Poly d = series::trunc(det(L.tauhat), 2);
  EXPECT_TRUE(d.coeff(0).is_zero());
  EXPECT_TRUE(d.coeff(1).is_unit());
  EXPECT_TRUE(is_formal(L));
  EXPECT_EQ(local_invariants(L).omega_dim, 1u);
  EXPECT_EQ(local_invariants(L).order_exponents, (std::vector<std::size_t>{2, 4}));
}

TEST(Local, EtalePrime) {
  Ring k = f4();
  TModule E = carlitz(k);
  auto L = local_shtuka_at(motive_of(E), tpoly(k, "t"), 4);
  EXPECT_TRUE(L.root.is_zero());
  EXPECT_TRUE(series::trunc(det(L.tauhat), 4).coeff(0).is_unit());
  EXPECT_FALSE(is_formal(L));
  auto inv = local_invariants(L);
  EXPECT_EQ(inv.omega_dim, 0u);
  EXPECT_EQ(inv.etale_rank, 1u);
  EXPECT_EQ(inv.order_exponents, (std::vector<std::size_t>{1, 2, 3, 4}));
}

TEST(Local, ResidueFieldTooSmall) {
  Ring k = f2();
  expect_error(ErrorKind::ResidueFieldTooSmall,
               [&] { local_shtuka_at(motive_of(carlitz(k)), tpoly(k, "t^2+t+1"), 3); });
  expect_error(ErrorKind::PreconditionViolated,
               [&] { local_shtuka_at(motive_of(carlitz(k)), tpoly(k, "t^2+1"), 3); });
}

TEST(Local, PrecisionTooLow) {
  Ring k = f2();
  auto L = local_shtuka_at(motive_of(carlitz(k)), tpoly(k, "t+1"), 1);
  expect_error(ErrorKind::PrecisionTooLow, [&] { local_invariants(L); });
}

TEST(Local, HenselRootIsExact) {
  std::mt19937_64 rng(71);
  for (const Ring& k : {f2(), f4(), f3(), f9(), f16()})
    for (int it = 0; it < 6; ++it) {
      Poly p = min_poly_fq(random_elem(k, rng));
      for (std::size_t n = 1; n <= 8; ++n) {
        auto L = local_shtuka_at(motive_of(carlitz(k)), p, n);
        EXPECT_EQ(series::eval(p, L.omega, n), series::trunc(Poly::var(k), n));
        EXPECT_EQ(L.omega.coeff(0), L.root);
      }
    }
}

TEST(Local, TruncationCoherence) {
  std::mt19937_64 rng(72);
  for (const Ring& k : {f2(), f4(), f9()})
    for (int it = 0; it < 3; ++it) {
      TMotive M = motive_of(random_drinfeld(k, 2, rng));
      Poly p = it == 0 ? min_poly_fq(k.theta()) : min_poly_fq(random_elem(k, rng));
      auto L = local_shtuka_at(M, p, 8);
      for (std::size_t n = 1; n <= 8; ++n) {
        auto Ln = local_shtuka_at(M, p, n);
        auto R = reduce_precision(L, n);
        EXPECT_EQ(R.omega, Ln.omega);
        EXPECT_EQ(R.tauhat, Ln.tauhat);
      }
    }
}

TEST(Local, DeterminantIsUnitTimesPowerOfZ) {
  std::mt19937_64 rng(73);
  for (const Ring& k : {f2(), f4(), f3()})
    for (std::size_t r = 1; r <= 3; ++r) {
      TModule E = random_drinfeld(k, r, rng);
      auto L = local_shtuka_at(motive_of(E), char_prime(E), 6);
      Poly d = series::trunc(det(L.tauhat), 6);
      EXPECT_EQ(series::valuation(d, 6), 1u);
      EXPECT_EQ(local_invariants(L).omega_dim, 1u);
    }
  Ring k = f4();
  auto L = local_shtuka_at(motive_of(carlitz_sum(k)), char_prime(carlitz(k)), 5);
  EXPECT_EQ(local_invariants(L).omega_dim, 2u);
  EXPECT_EQ(local_invariants(L).order_exponents[2], 2u * 2u * 3u);
}

TEST(Local, RankTwoAtTheCharacteristicPrime) {
  Ring k = f2();
  // Ordinary: the tau-coefficient is a unit.
  auto Lo = local_shtuka_at(motive_of(new_drinfeld(k, SkewPoly(k, {k.one(), k.one(), k.one()}))), tpoly(k, "t+1"), 4);
  auto io = local_invariants(Lo);
  EXPECT_EQ(io.order_exponents, (std::vector<std::size_t>{2, 4, 6, 8}));
  EXPECT_EQ(io.omega_dim, 1u);
  EXPECT_EQ(io.etale_rank, 1u);
  EXPECT_FALSE(is_formal(Lo));
  // Supersingular: phi_t = theta + tau^2.
  auto Ls = local_shtuka_at(motive_of(new_drinfeld(k, SkewPoly(k, {k.one(), k.zero(), k.one()}))), tpoly(k, "t+1"), 4);
  auto is = local_invariants(Ls);
  EXPECT_EQ(is.etale_rank, 0u);
  EXPECT_TRUE(is_formal(Ls));
}

TEST(Local, FormalIffConnected) {
  std::mt19937_64 rng(74);
  for (const Ring& k : {f2(), f4(), f3()})
    for (std::size_t r = 1; r <= 3; ++r)
      for (int it = 0; it < 3; ++it) {
        TModule E = random_drinfeld(k, r, rng);
        auto L = local_shtuka_at(motive_of(E), char_prime(E), 4);
        EXPECT_EQ(is_formal(L), local_invariants(L).etale_rank == 0);
      }
}

// Orders against the torsion shtuka, the tau-degree of phi_{p^j}, and the
// number of geometric points of E[p^j].
TEST(Local, OrderLawAgainstDirectCounts) {
  std::mt19937_64 rng(75);
  for (const Ring& k : {f2(), f4(), f3()})
    for (int it = 0; it < 3; ++it) {
      TModule E = random_drinfeld(k, 2, rng);
      for (const Poly& p : {char_prime(E), min_poly_fq(random_elem(k, rng))}) {
        const std::size_t n = 3;
        auto L = local_shtuka_at(motive_of(E), p, n);
        auto inv = local_invariants(L);
        for (std::size_t j = 1; j <= n; ++j) {
          const Poly pj = p.pow(j);
          const std::size_t e = inv.order_exponents[j - 1];
          EXPECT_EQ(e, j * E.rank() * L.f);
          EXPECT_EQ(static_cast<std::size_t>(tau_degree(phi_of(E, pj))), e);
          EXPECT_EQ(torsion_shtuka(E, pj).dim(), e);
          if (j <= 2) {
            auto T = torsion_points(E, pj, torsion_splitting_degree(E, pj, 256));
            EXPECT_EQ(T.points.size(), qpow(k.q(), j * L.f * inv.etale_rank));
          }
        }
      }
    }
}

TEST(Local, DivisibilityAndNegativeControl) {
  std::mt19937_64 rng(76);
  Ring k = f4();
  TModule E = random_drinfeld(k, 2, rng);
  auto L = local_shtuka_at(motive_of(E), char_prime(E), 5);
  EXPECT_TRUE(divisibility_check(L));
  auto bad = L;
  bad.precision[0] = 3;
  EXPECT_FALSE(divisibility_check(bad));
  bad = L;
  bad.precision.pop_back();
  EXPECT_FALSE(divisibility_check(bad));
}
