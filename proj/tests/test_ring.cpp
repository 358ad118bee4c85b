#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace drinfeld;
using namespace fixtures;

namespace {

// Schoolbook product in F_p[x]/(f) on plain integer vectors, independent of
// the library's recursive kernel.
std::vector<u32> naive_mul(const std::vector<u32>& a, const std::vector<u32>& b, const std::vector<u32>& f, u32 p) {
  const std::size_t n = f.size() - 1;
  std::vector<long long> c(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i + j] = (c[i + j] + 1LL * a[i] * b[j]) % p;
  for (std::size_t i = 2 * n - 1; i >= n; --i) {
    long long top = c[i];
    c[i] = 0;
    for (std::size_t j = 0; j < n; ++j) c[i - n + j] = ((c[i - n + j] - top * f[j]) % p + p) % p;
  }
  return std::vector<u32>(c.begin(), c.begin() + static_cast<long>(n));
}

Ring f64() { return Ring::finite_field(2, 2, {1, 1, 0, 0, 0, 0, 1}, {0, 1}); }

}  // namespace

TEST(Ring, FrobeniusOfGeneratorInF4) {
  Ring R = f4();
  Elem om = w(R);
  EXPECT_EQ(om.frob(), om + R.one());
  EXPECT_EQ(R.zero().frob(), R.zero());
  EXPECT_EQ(R.one().frob(), R.one());
}

TEST(Ring, FrobeniusOfEpsilonIsItsSquare) {
  Ring R = Ring::truncated(f2(), 3, {});
  Elem e = R.generator();
  EXPECT_EQ(e.frob(), e * e);
  EXPECT_FALSE((e * e).is_zero());
  EXPECT_TRUE((e * e * e).is_zero());
}

TEST(Ring, UnitAndNilpotentInTruncatedRing) {
  Ring R = Ring::truncated(f2(), 2, {});
  Elem e = R.generator();
  Elem u = R.one() + e;
  EXPECT_TRUE(u.is_unit());
  EXPECT_EQ(u.inverse(), u);
  EXPECT_TRUE(e.is_nilpotent());
  EXPECT_FALSE(e.is_unit());
  EXPECT_TRUE(R.zero().is_nilpotent());
  EXPECT_FALSE(R.zero().is_unit());
  EXPECT_THROW(e.inverse(), Error);
}

TEST(Ring, GammaEvaluatesAtTheta) {
  Ring R = f4();
  EXPECT_EQ(gamma(R, tpoly(R, "t")), w(R));
  EXPECT_TRUE(gamma(R, tpoly(R, "t^2+t+1")).is_zero());
  EXPECT_EQ(gamma(R, tpoly(R, "1")), R.one());
}

TEST(Ring, FrobeniusFixedPointsAreFq) {
  for (const Ring& R : {f4(), Ring::truncated(f2(), 2, {}), f2(), f16(4), f9(9), Ring::truncated(f4(), 3, {0, 1})}) {
    std::vector<Elem> brute;
    for (const auto& x : R.elements())
      if (x.pow(R.q()) == x) brute.push_back(x);
    std::sort(brute.begin(), brute.end());
    auto fixed = R.fq_elements();
    EXPECT_EQ(fixed.size(), R.q());
    EXPECT_EQ(fixed, brute) << R.describe();
  }
}

TEST(Ring, MultiplicationMatchesSchoolbookOracle) {
  for (const Ring& R : {f4(), f8(), f9(), f16(), f64()}) {
    auto all = R.elements();
    for (const auto& a : all)
      for (const auto& b : all)
        ASSERT_EQ((a * b).coords(), naive_mul(a.coords(), b.coords(), R.modulus_coords(), R.p()));
  }
}

TEST(Ring, FrobeniusIsARingEndomorphismExhaustively) {
  for (const Ring& R : {f4(), f9(), f16(4), Ring::truncated(f4(), 3, {0, 1}), Ring::truncated(f9(), 2, {}), f64()}) {
    auto all = R.elements();
    for (const auto& a : all)
      for (const auto& b : all) {
        ASSERT_EQ((a * b).frob(), a.frob() * b.frob());
        ASSERT_EQ((a + b).frob(), a.frob() + b.frob());
      }
  }
}

TEST(Ring, FrobeniusHasFiniteOrderOnFields) {
  for (const Ring& R : {f4(), f16(), f16(4), f9(), f64()}) {
    for (const auto& x : R.elements()) {
      ASSERT_EQ(x.frob(R.degree_over_fq()), x);
      ASSERT_EQ(x.frob_inverse().frob(), x);
    }
  }
}

TEST(Ring, UnitXorNilpotent) {
  for (const Ring& R : {f4(), Ring::truncated(f4(), 3, {0, 1}), Ring::truncated(f3(), 3, {})}) {
    for (const auto& x : R.elements()) {
      ASSERT_NE(x.is_unit(), x.is_nilpotent());
      if (x.is_unit()) ASSERT_TRUE((x * x.inverse()).is_one());
    }
  }
}

TEST(Ring, TowerExtensionInverses) {
  Ring K = f4();
  // y^2 + y + w is irreducible over F_4 since Tr(w) = 1.
  std::vector<u32> mod = {0, 1, 1, 0, 1, 0};
  Ring L = Ring::extension_unchecked(K, mod);
  EXPECT_EQ(L.dim(), 4u);
  std::size_t units = 0;
  for (const auto& x : L.elements()) {
    if (x.is_zero()) continue;
    ++units;
    ASSERT_TRUE((x * x.inverse()).is_one());
  }
  EXPECT_EQ(units, 15u);
  Elem om = L.embed(w(K));
  EXPECT_EQ(lift_to(L, w(K)), om);
  EXPECT_EQ(L.restrict(om).value(), w(K));
  EXPECT_EQ(L.theta(), om);
}

TEST(Ring, GammaIsAHomomorphism) {
  std::mt19937_64 rng(11);
  Ring R = f16(2, {1, 0, 1});
  for (int it = 0; it < 200; ++it) {
    Poly a = random_apoly(R, rng() % 6, rng), b = random_apoly(R, rng() % 6, rng);
    ASSERT_EQ(gamma(R, a * b), gamma(R, a) * gamma(R, b));
    ASSERT_EQ(gamma(R, a + b), gamma(R, a) + gamma(R, b));
  }
}

TEST(Ring, RejectsInvalidDescriptions) {
  EXPECT_THROW(Ring::finite_field(2, 2, {1, 0, 1}, {0, 1}), Error);  // (x+1)^2
  EXPECT_THROW(Ring::finite_field(2, 3, {1, 1, 1}, {}), Error);
  EXPECT_THROW(Ring::finite_field(4, 4, {0, 1}, {}), Error);
  EXPECT_THROW(Ring::finite_field(2, 8, {1, 1, 1}, {}), Error);  // F_8 is not inside F_4
  EXPECT_THROW(Ring::finite_field(2, 2, {1, 1, 2}, {}), Error);
  EXPECT_THROW(Ring::truncated(f2(), 0, {}), Error);
  try {
    Ring::finite_field(3, 3, {2, 0, 1}, {});  // x^2 - 1
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidRing);
  }
}

TEST(Ring, IrreducibilityAgreesWithRootAndFactorSearch) {
  // Degree <= 3 polynomials over F_3 are irreducible iff they have no root.
  for (u32 a = 0; a < 3; ++a)
    for (u32 b = 0; b < 3; ++b)
      for (u32 c = 0; c < 3; ++c) {
        std::vector<u32> f = {a, b, c, 1};
        bool root = false;
        for (u32 x = 0; x < 3; ++x)
          if ((a + b * x + c * x * x + x * x * x) % 3 == 0) root = true;
        EXPECT_EQ(detail::fpx::is_irreducible(f, 3), !root);
      }
  // Quartics over F_2: the irreducible ones are exactly x^4+x+1, x^4+x^3+1, x^4+x^3+x^2+x+1.
  int count = 0;
  for (u32 m = 0; m < 16; ++m) {
    std::vector<u32> f = {m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1, 1};
    if (detail::fpx::is_irreducible(f, 2)) ++count;
  }
  EXPECT_EQ(count, 3);
}
