#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace drinfeld;
using namespace fixtures;

namespace {

SkewPoly sp(const Ring& R, std::vector<Elem> c) { return SkewPoly(R, std::move(c)); }

SkewMatrix one_by_one(const SkewPoly& p) {
  SkewMatrix m = skew_zero(p.ring(), 1, 1);
  m(0, 0) = p;
  return m;
}

TMotive scalar_motive(const Poly& T) {
  PolyMatrix m = poly_zero(T.ring(), 1, 1);
  m(0, 0) = T;
  return {T.ring(), m, std::nullopt};
}

MotiveMorphism scalar_mult(const TMotive& M, const Poly& a) {
  return make_motive_morphism(M, M, times(a, poly_identity(M.ring, M.rank())));
}

}  // namespace

TEST(TMotive, CarlitzMotive) {
  Ring R = f4();
  TMotive M = motive_of(carlitz(R));
  ASSERT_EQ(M.rank(), 1u);
  EXPECT_EQ(M.T(0, 0), t_minus_theta(R));
  auto rd = rank_dim(M);
  EXPECT_EQ(rd.r, 1u);
  EXPECT_EQ(rd.d, 1u);
}

TEST(TMotive, RankTwoMotive) {
  Ring R = f4();
  Elem om = w(R), g = om, D = om + R.one();
  TMotive M = motive_of(new_drinfeld(R, sp(R, {om, g, D})));
  Elem Di = D.inverse();
  EXPECT_TRUE(M.T(0, 0).is_zero());
  EXPECT_EQ(M.T(1, 0), Poly::constant(R.one()));
  EXPECT_EQ(M.T(0, 1), t_minus_theta(R) * Poly::constant(Di));
  EXPECT_EQ(M.T(1, 1), Poly::constant(-(Di * g)));
  EXPECT_EQ(det(M.T), t_minus_theta(R) * Poly::constant(-Di));
  auto rd = rank_dim(M);
  EXPECT_EQ(rd.r, 2u);
  EXPECT_EQ(rd.d, 1u);
}

TEST(TMotive, RankDimOfIdentityAndNonEffective) {
  Ring R = f4();
  TMotive I{R, poly_identity(R, 3), std::nullopt};
  EXPECT_EQ(rank_dim(I).d, 0u);
  expect_error(ErrorKind::NotEffective, [&] { rank_dim(scalar_motive(tpoly(R, "t"))); });
}

TEST(TMotive, TModuleOfCarlitz) {
  Ring R = f4();
  auto res = tmodule_of(scalar_motive(t_minus_theta(R)));
  EXPECT_EQ(res.module.phi_t()(0, 0), sp(R, {R.theta(), R.one()}));
}

TEST(TMotive, TModuleOfEtaleMotiveIsRejected) {
  Ring R = f4();
  expect_error(ErrorKind::NotAbelian, [&] { tmodule_of(TMotive{R, poly_identity(R, 2), std::nullopt}); });
}

TEST(TMotive, RoundTripWithConjugator) {
  std::mt19937_64 rng(31);
  for (const Ring& R : {f2(), f3(), f4(), f9(), f16()})
    for (std::size_t r = 1; r <= 3; ++r)
      for (int it = 0; it < 5; ++it) {
        TModule E = random_drinfeld(R, r, rng);
        TMotive M = motive_of(E);
        auto res = tmodule_of(M);
        ASSERT_TRUE(res.conjugator.has_value());
        const SkewMatrix& u = *res.conjugator;
        EXPECT_EQ(tau_degree(u), 0);
        EXPECT_TRUE(lie(u)(0, 0).is_unit());
        EXPECT_EQ(u * E.phi_t(), res.module.phi_t() * u);
        EXPECT_EQ(res.iso * motive_of(res.module).T, M.T * frob(res.iso));
      }
}

TEST(TMotive, Contravariance) {
  std::mt19937_64 rng(32);
  for (const Ring& R : {f4(), f9()}) {
    TModule E = random_drinfeld(R, 2, rng);
    for (int it = 0; it < 8; ++it) {
      auto f = phi_morphism(E, random_apoly(R, 2, rng));
      auto g = phi_morphism(E, random_apoly(R, 2, rng));
      EXPECT_EQ(motive_of(compose(f, g)).U, compose(motive_of(g), motive_of(f)).U);
    }
  }
}

TEST(TMotive, ScalarMultiplicationIsAScalarMatrix) {
  std::mt19937_64 rng(33);
  Ring R = f4();
  TModule E = random_drinfeld(R, 3, rng);
  Poly a = tpoly(R, "t^2+t+1");
  EXPECT_EQ(motive_of(phi_morphism(E, a)).U, times(a, poly_identity(R, 3)));
}

TEST(TMotive, RealizeRecoversTheMorphism) {
  Ring k = f2();
  TModule C = carlitz(k);
  TModuleMorphism f(C, C, one_by_one(sp(k, {k.one(), k.zero(), k.one()})));
  auto Mf = motive_of(f);
  EXPECT_EQ(realize(Mf.target, Mf.U.column(0)), f.matrix());
}

// Multiplication by a is tau-linear only for a with F_q coefficients, so
// theta lies in F_q here.
TEST(TMotive, IsogenyExamples) {
  Ring R = f3(2);
  TMotive M = scalar_motive(t_minus_theta(R));
  auto f = scalar_mult(M, t_minus_theta(R));
  EXPECT_TRUE(is_isogeny_motive(f));
  EXPECT_EQ(cokernel_shtuka(f).dim(), 1u);
  EXPECT_FALSE(is_isogeny_motive(MotiveMorphism{M, M, poly_zero(R, 1, 1)}));
  auto id = scalar_mult(M, Poly::constant(R.one()));
  EXPECT_TRUE(is_isogeny_motive(id));
  EXPECT_EQ(cokernel_shtuka(id).dim(), 0u);
  EXPECT_TRUE(is_separable_motive(id));
  expect_error(ErrorKind::NotAnIsogeny, [&] { cokernel_shtuka(MotiveMorphism{M, M, poly_zero(R, 1, 1)}); });
}

TEST(TMotive, CokernelOfMultiplicationByJ) {
  Ring R = f3(2);
  TMotive M = scalar_motive(t_minus_theta(R));
  auto V = cokernel_shtuka(scalar_mult(M, t_minus_theta(R)));
  ASSERT_EQ(V.dim(), 1u);
  EXPECT_TRUE(V.F(0, 0).is_zero());
  EXPECT_EQ((*V.t_action)(0, 0), R.theta());
  EXPECT_FALSE(is_separable_motive(scalar_mult(M, t_minus_theta(R))));
  EXPECT_TRUE(is_separable_motive(scalar_mult(M, tpoly(R, "t"))));
}

TEST(TMotive, FrobeniusOfCarlitzOverF2) {
  Ring k = f2();
  TModule C = carlitz(k);
  auto Mf = motive_of(TModuleMorphism(C, C, one_by_one(SkewPoly::tau(k))));
  EXPECT_EQ(Mf.U(0, 0), tpoly(k, "t+1"));
  auto V = cokernel_shtuka(Mf);
  ASSERT_EQ(V.dim(), 1u);
  EXPECT_TRUE(V.F(0, 0).is_zero());
  EXPECT_EQ(annihilator(Mf), tpoly(k, "t+1"));
}

TEST(TMotive, AnnihilatorExamples) {
  Ring k = f2();
  TMotive M = scalar_motive(t_minus_theta(k));
  Poly J = t_minus_theta(k);
  EXPECT_EQ(annihilator(scalar_mult(M, J * J)), J * J);
  EXPECT_EQ(annihilator(scalar_mult(M, Poly::constant(k.one()))), Poly::constant(k.one()));
}

TEST(TMotive, CokernelDimensionOfScalarIsRankTimesDegree) {
  std::mt19937_64 rng(34);
  for (const Ring& R : {f4(), f9()})
    for (std::size_t r = 1; r <= 3; ++r) {
      TModule E = random_drinfeld(R, r, rng);
      Poly a = random_apoly(R, 1 + rng() % 2, rng);
      if (a.is_zero()) continue;
      EXPECT_EQ(cokernel_shtuka(motive_of(phi_morphism(E, a))).dim(), r * static_cast<std::size_t>(a.degree()));
    }
}

TEST(TMotive, SemilinearLawHoldsForComputedMorphisms) {
  std::mt19937_64 rng(35);
  Ring R = f16();
  TModule E = random_drinfeld(R, 2, rng);
  auto f = motive_of(phi_morphism(E, tpoly(R, "t^3+t+1")));
  EXPECT_EQ(f.U * f.source.T, f.target.T * frob(f.U));
}

TEST(TMotive, ModuleAndMotiveIsogenyPredicatesAgree) {
  Ring k = f2();
  TModule C = carlitz(k);
  TModule E = new_drinfeld(k, sp(k, {k.one(), k.one(), k.one()}));
  for (const TModule& X : {C, E})
    for (u32 bits = 0; bits < 16; ++bits) {
      std::vector<Elem> c;
      for (int i = 0; i < 4; ++i) c.push_back(k.from_int((bits >> i) & 1));
      SkewMatrix F = one_by_one(sp(k, c));
      if (!(F * X.phi_t() == X.phi_t() * F)) continue;
      TModuleMorphism f(X, X, F);
      EXPECT_EQ(is_isogeny_module(f), is_isogeny_motive(motive_of(f)));
    }
}
