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

}  // namespace

TEST(TModule, CarlitzAndRankTwo) {
  Ring R = f4();
  Elem om = w(R);
  TModule C = carlitz(R);
  EXPECT_EQ(C.rank(), 1u);
  EXPECT_EQ(C.dim(), 1u);
  TModule E = new_drinfeld(R, sp(R, {om, R.one(), om}));
  EXPECT_EQ(E.rank(), 2u);
  EXPECT_TRUE(E.is_drinfeld());
}

TEST(TModule, WrongConstantTermIsRejected) {
  Ring R = f4();
  expect_error(ErrorKind::NotDrinfeld, [&] { new_drinfeld(R, SkewPoly::tau(R)); });
  expect_error(ErrorKind::NotDrinfeld, [&] { new_drinfeld(R, SkewPoly::constant(R.theta())); });
}

TEST(TModule, NonNilpotentLieIsRejected) {
  Ring R = f4();
  SkewMatrix phi = skew_identity(R, 2).scaled(SkewPoly(R, {R.theta(), R.one()}));
  EXPECT_NO_THROW(TModule::create(R, phi));
  phi(0, 0) = SkewPoly(R, {R.one(), R.one()});
  expect_error(ErrorKind::NotDrinfeld, [&] { TModule::create(R, phi); });
}

TEST(TModule, StandardFormOverTruncatedRing) {
  Ring k = f2();
  Ring R = Ring::truncated(k, 2, {1, 0});
  Elem eps = R.generator();
  // phi_t = theta + tau + eps tau^2 has rank 1 after conjugation.
  TModule E = new_drinfeld(R, sp(R, {R.theta(), R.one(), eps}));
  EXPECT_EQ(E.rank(), 1u);
  const SkewPoly& c = E.conjugator()(0, 0);
  EXPECT_EQ(sp(R, {R.theta(), R.one(), eps}) * c, c * E.phi_t()(0, 0));
}

TEST(TModule, PhiOfCarlitzSquare) {
  Ring R = f4();
  Elem om = w(R);
  TModule C = carlitz(R);
  EXPECT_EQ(phi_of(C, tpoly(R, "t^2"))(0, 0), sp(R, {om + R.one(), R.one(), R.one()}));
  EXPECT_EQ(phi_of(C, tpoly(R, "1")), skew_identity(R, 1));
}

TEST(TModule, PhiOfIsARingHomomorphism) {
  std::mt19937_64 rng(21);
  for (const Ring& R : {f4(), f9(), f16()}) {
    TModule E = random_drinfeld(R, 2, rng);
    for (int it = 0; it < 10; ++it) {
      Poly a = random_apoly(R, rng() % 4, rng), b = random_apoly(R, rng() % 4, rng);
      SkewMatrix pa = phi_of(E, a), pb = phi_of(E, b);
      EXPECT_EQ(pa * pb, phi_of(E, a * b));
      EXPECT_EQ(pb * pa, pa * pb);
      EXPECT_EQ(pa + pb, phi_of(E, a + b));
      if (!a.is_zero()) EXPECT_EQ(tau_degree(pa), static_cast<int>(2 * a.degree()));
    }
  }
}

TEST(TModule, RankTwoCubeHasDegreeSix) {
  Ring R = f4();
  TModule E = new_drinfeld(R, sp(R, {w(R), R.one(), w(R)}));
  EXPECT_EQ(tau_degree(phi_of(E, tpoly(R, "t^3+t"))), 6);
}

TEST(TModule, PhiOfRejectsNonRationalCoefficients) {
  Ring R = f4();
  expect_error(ErrorKind::PreconditionViolated, [&] { phi_of(carlitz(R), Poly(R, {w(R)})); });
}

TEST(TModule, LieExamples) {
  Ring R = f4();
  TModule C = carlitz(R);
  EXPECT_EQ(lie(phi_morphism(C, tpoly(R, "t")))(0, 0), w(R));
  Ring k = f2();
  TModule C2 = carlitz(k);
  EXPECT_TRUE(lie(TModuleMorphism(C2, C2, one_by_one(SkewPoly::tau(k))))(0, 0).is_zero());
  EXPECT_EQ(lie(TModuleMorphism(C2, C2, one_by_one(sp(k, {k.one(), k.one()}))))(0, 0), k.one());
}

TEST(TModule, MorphismCheck) {
  Ring R = f4();
  TModule C = carlitz(R);
  // tau does not commute with omega + tau over F_4 since omega is not fixed.
  expect_error(ErrorKind::NotAMorphism, [&] { TModuleMorphism(C, C, one_by_one(SkewPoly::tau(R))); });
}

TEST(TModule, LieIsFunctorial) {
  std::mt19937_64 rng(22);
  Ring R = f9();
  TModule E = random_drinfeld(R, 2, rng);
  for (int it = 0; it < 10; ++it) {
    auto f = phi_morphism(E, random_apoly(R, 2, rng));
    auto g = phi_morphism(E, random_apoly(R, 2, rng));
    EXPECT_EQ(lie(compose(f, g)), lie(f) * lie(g));
  }
}

TEST(TModule, IsogenyAndSeparability) {
  Ring k = f2();
  TModule C = carlitz(k);
  TModuleMorphism tau(C, C, one_by_one(SkewPoly::tau(k)));
  EXPECT_TRUE(is_isogeny_module(tau));
  EXPECT_FALSE(is_separable_module(tau));
  TModuleMorphism zero(C, C, skew_zero(k, 1, 1));
  EXPECT_FALSE(is_isogeny_module(zero));
  expect_error(ErrorKind::NotAnIsogeny, [&] { is_separable_module(zero); });

  Ring R = f4();
  TModule C4 = carlitz(R);
  EXPECT_TRUE(is_isogeny_module(phi_morphism(C4, tpoly(R, "t"))));
  EXPECT_TRUE(is_separable_module(phi_morphism(C4, tpoly(R, "t"))));
  // t^2 + t + 1 is the minimal polynomial of omega.
  EXPECT_FALSE(is_separable_module(phi_morphism(C4, tpoly(R, "t^2+t+1"))));
}

TEST(TModule, SeparabilityOfPhiAMatchesGamma) {
  std::mt19937_64 rng(23);
  for (const Ring& R : {f4(), f9()}) {
    TModule E = random_drinfeld(R, 2, rng);
    for (int it = 0; it < 20; ++it) {
      Poly a = random_apoly(R, 3, rng);
      if (a.is_zero()) continue;
      EXPECT_EQ(is_separable_module(phi_morphism(E, a)), !gamma(R, a).is_zero());
    }
  }
}

TEST(TModule, KernelPointsExamples) {
  Ring R = f4();
  TModule C = carlitz(R);
  auto pts = kernel_points(phi_morphism(C, tpoly(R, "t")), 1);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_TRUE(pts[0][0].is_zero());
  EXPECT_EQ(pts[1][0], w(R));
  EXPECT_EQ(kernel_points(identity_morphism(C), 3).size(), 1u);
  // t^2 is separable at theta = omega; its kernel has 4 geometric points.
  auto f = phi_morphism(C, tpoly(R, "t^2"));
  auto sd = splitting_degree(cokernel_shtuka(motive_of(f)), 24);
  ASSERT_TRUE(sd.has_value());
  EXPECT_EQ(kernel_points(f, *sd).size(), 4u);
}

TEST(TModule, KernelPointsAreKilled) {
  std::mt19937_64 rng(24);
  Ring R = f4();
  TModule E = random_drinfeld(R, 2, rng);
  auto f = phi_morphism(E, tpoly(R, "t+1"));
  for (std::size_t m = 1; m <= 3; ++m) {
    auto pts = kernel_points(f, m);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    for (const auto& x : pts) EXPECT_TRUE(mat_vec(f.matrix(), x)[0].is_zero());
  }
}
