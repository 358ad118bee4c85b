#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

using namespace drinfeld;
using namespace fixtures;

namespace {

std::size_t qpow(std::size_t q, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= q;
  return r;
}

}  // namespace

TEST(Torsion, ShtukaOfCarlitzAtT) {
  Ring k = f4();
  auto V = torsion_shtuka(carlitz(k), tpoly(k, "t"));
  ASSERT_EQ(V.dim(), 1u);
  EXPECT_EQ(V.F(0, 0), -w(k));
  EXPECT_TRUE(is_etale(V));
}

TEST(Torsion, ShtukaAtTheCharacteristicIsNilpotent) {
  Ring k = f2();
  auto V = torsion_shtuka(carlitz(k), tpoly(k, "t+1"));
  ASSERT_EQ(V.dim(), 1u);
  EXPECT_TRUE(is_nilpotent(V));
  EXPECT_EQ(omega(V).dim, 1u);
  EXPECT_EQ(torsion_shtuka(carlitz(k), tpoly(k, "1")).dim(), 0u);
}

TEST(Torsion, EtaleIffAOfThetaNonzero) {
  std::mt19937_64 rng(51);
  for (const Ring& k : {f4(), f9()}) {
    TModule E = random_drinfeld(k, 2, rng);
    for (int it = 0; it < 15; ++it) {
      Poly a = random_apoly(k, 1 + rng() % 3, rng);
      if (a.is_zero() || a.degree() == 0) continue;
      auto V = torsion_shtuka(E, a);
      EXPECT_EQ(V.dim(), 2 * static_cast<std::size_t>(a.degree()));
      EXPECT_EQ(is_etale(V), !gamma(k, a).is_zero());
    }
  }
}

TEST(Torsion, PowersOfTheCharacteristicPrimeLoseEtaleRank) {
  std::mt19937_64 rng(52);
  Ring k = f4();
  Poly p = min_poly_fq(k.theta());
  for (int it = 0; it < 5; ++it) {
    TModule E = random_drinfeld(k, 2, rng);
    for (u64 j = 1; j <= 2; ++j) {
      auto V = torsion_shtuka(E, p.pow(j));
      EXPECT_FALSE(is_etale(V));
      EXPECT_LT(connected_etale_split(V).et.dim(), V.dim());
    }
  }
}

TEST(Torsion, CarlitzPointsAtT) {
  Ring k = f4();
  auto T = torsion_points(carlitz(k), tpoly(k, "t"), 1);
  ASSERT_EQ(T.points.size(), 2u);
  EXPECT_TRUE(T.points[0][0].is_zero());
  EXPECT_EQ(T.points[1][0], w(k));
  EXPECT_TRUE(T.free);
  EXPECT_EQ(T.rank, 1u);
  EXPECT_EQ(quotient_ring_name(tpoly(k, "t")), "F_2[t]/(t)");
}

TEST(Torsion, CarlitzPointsAtTSquared) {
  Ring k = f4();
  TModule C = carlitz(k);
  Poly a = tpoly(k, "t^2");
  auto T = torsion_points(C, a, torsion_splitting_degree(C, a));
  EXPECT_EQ(T.points.size(), 4u);
  EXPECT_TRUE(T.free);
  EXPECT_EQ(T.rank, 1u);
}

TEST(Torsion, RankTwoIsFreeOfRankTwo) {
  std::mt19937_64 rng(53);
  for (const Ring& k : {f2(), f4(), f3()})
    for (int it = 0; it < 4; ++it) {
      TModule E = random_drinfeld(k, 2, rng);
      Poly a = tpoly(k, "t");
      if (gamma(k, a).is_zero()) a = tpoly(k, "t+1");
      auto T = torsion_points(E, a, torsion_splitting_degree(E, a, 64));
      EXPECT_EQ(T.points.size(), qpow(k.q(), 2));
      EXPECT_TRUE(T.free);
      EXPECT_EQ(T.rank, 2u);
    }
}

TEST(Torsion, SplittingDegreeIsMinimal) {
  std::mt19937_64 rng(54);
  Ring k = f2(0);
  for (int it = 0; it < 5; ++it) {
    TModule E = random_drinfeld(k, 2, rng);
    Poly a = tpoly(k, "t^2+t+1");
    std::size_t m = torsion_splitting_degree(E, a, 64);
    EXPECT_EQ(torsion_points(E, a, m).points.size(), 16u);
    for (std::size_t j = 1; j < m; ++j)
      if (m % j == 0) EXPECT_LT(torsion_points(E, a, j).points.size(), 16u);
  }
}

TEST(Torsion, FrobeniusPermutationCommutesWithT) {
  std::mt19937_64 rng(55);
  Ring k = f4();
  TModule E = random_drinfeld(k, 2, rng);
  Poly a = tpoly(k, "t+1");
  auto T = torsion_points(E, a, torsion_splitting_degree(E, a, 64));
  std::set<std::size_t> image(T.frobenius.begin(), T.frobenius.end());
  EXPECT_EQ(image.size(), T.points.size());
  for (std::size_t i = 0; i < T.points.size(); ++i) {
    Point tx = mat_vec(E.phi_t(), T.points[i]);
    auto j = static_cast<std::size_t>(std::lower_bound(T.points.begin(), T.points.end(), tx) - T.points.begin());
    ASSERT_LT(j, T.points.size());
    Point lhs = mat_vec(E.phi_t(), T.points[T.frobenius[i]]);
    EXPECT_EQ(lhs, T.points[T.frobenius[j]]);
  }
}

TEST(Torsion, CrtExamples) {
  Ring k = f4();
  TModule C = carlitz(k);
  EXPECT_TRUE(crt_check(C, tpoly(k, "t"), tpoly(k, "t+1")));
  EXPECT_TRUE(crt_check(C, tpoly(k, "1"), tpoly(k, "t")));
  expect_error(ErrorKind::NotCoprime, [&] { crt_check(C, tpoly(k, "t"), tpoly(k, "t")); });
}

TEST(Torsion, CrtOnRankTwo) {
  std::mt19937_64 rng(56);
  Ring k = f2();
  TModule E = random_drinfeld(k, 2, rng);
  EXPECT_TRUE(crt_check(E, tpoly(k, "t"), tpoly(k, "t^2+t+1"), 0, 64));
}

TEST(Torsion, KernelPointsMapToShtukaPoints) {
  std::mt19937_64 rng(57);
  for (const Ring& k : {f2(), f4()}) {
    TModule E = random_drinfeld(k, 2, rng);
    Poly a = random_apoly(k, 1, rng);
    if (a.degree() < 1) a = tpoly(k, "t^2+1");
    auto f = phi_morphism(E, a);
    KernelPointMap lam(f);
    const FinShtuka& V = lam.shtuka();
    std::size_t m = *splitting_degree(V, 64);
    auto T = kernel_module(E, f.matrix(), m, a);
    EXPECT_EQ(T.points.size(), qpow(k.q(), etale_rank(V)));
    std::set<std::vector<Elem>> images;
    ElemMatrix C = lift(V.F.transpose(), T.field), tA = lift(V.t_action->transpose(), T.field);
    for (const auto& x : T.points) {
      auto z = lam(x);
      std::vector<Elem> zq;
      for (const auto& c : z) zq.push_back(c.frob());
      EXPECT_EQ(zq, mat_vec(C, z));
      EXPECT_EQ(lam(mat_vec(E.phi_t(), x)), mat_vec(tA, z));
      images.insert(z);
    }
    EXPECT_EQ(images.size(), T.points.size());
  }
}
