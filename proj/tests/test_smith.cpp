#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace drinfeld;
using namespace fixtures;

namespace {

PolyMatrix random_poly_matrix(const Ring& R, std::size_t n, std::size_t deg, std::mt19937_64& rng) {
  PolyMatrix A = poly_zero(R, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = random_poly(R, rng() % (deg + 1), rng);
  return A;
}

void check_smith(const PolyMatrix& A) {
  const Ring& R = A.zero().ring();
  auto s = smith_normal_form(A);
  ASSERT_EQ(s.U * A * s.V, s.D);
  ASSERT_EQ(s.U * s.U_inv, poly_identity(R, A.rows()));
  ASSERT_EQ(s.V * s.V_inv, poly_identity(R, A.cols()));
  ASSERT_EQ(det(s.U).degree(), 0);
  ASSERT_EQ(det(s.V).degree(), 0);
  auto d = s.diagonal();
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) ASSERT_TRUE(s.D(i, j).is_zero());
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i].is_zero()) {
      ASSERT_TRUE(d[i + 1].is_zero());
      continue;
    }
    ASSERT_TRUE(d[i].lead().is_one());
    ASSERT_TRUE(d[i].divides(d[i + 1]));
  }
}

}  // namespace

TEST(Smith, DiagonalChainIsFixed) {
  Ring R = f4();
  PolyMatrix A = poly_zero(R, 2, 2);
  A(0, 0) = tpoly(R, "t");
  A(1, 1) = tpoly(R, "t^2+t");
  auto s = smith_normal_form(A);
  EXPECT_EQ(s.D, A);
  EXPECT_EQ(s.U, poly_identity(R, 2));
  EXPECT_EQ(s.V, poly_identity(R, 2));
}

TEST(Smith, JordanBlockGivesSquare) {
  Ring R = f4();
  Poly J = t_minus_theta(R);
  PolyMatrix A = poly_zero(R, 2, 2);
  A(0, 0) = J;
  A(0, 1) = Poly::constant(R.one());
  A(1, 1) = J;
  auto d = smith_normal_form(A).diagonal();
  EXPECT_EQ(d[0], Poly::constant(R.one()));
  EXPECT_EQ(d[1], J * J);
}

TEST(Smith, ZeroMatrix) {
  Ring R = f3();
  PolyMatrix A = poly_zero(R, 3, 3);
  auto s = smith_normal_form(A);
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_EQ(s.U, poly_identity(R, 3));
  EXPECT_EQ(s.V, poly_identity(R, 3));
}

TEST(Smith, RandomMatricesSatisfyAllIdentities) {
  std::mt19937_64 rng(11);
  for (const Ring& R : {f2(), f3(), f4(), f9()})
    for (int it = 0; it < 60; ++it) check_smith(random_poly_matrix(R, 1 + rng() % 4, 3, rng));
}

TEST(Smith, RectangularAndSingular) {
  std::mt19937_64 rng(12);
  Ring R = f4();
  for (int it = 0; it < 30; ++it) {
    PolyMatrix A = poly_zero(R, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) A(i, j) = random_poly(R, rng() % 3, rng);
    check_smith(A);
    PolyMatrix B = random_poly_matrix(R, 3, 2, rng);
    for (std::size_t j = 0; j < 3; ++j) B(2, j) = B(0, j) * tpoly(R, "t+1");
    check_smith(B);
    EXPECT_TRUE(det(B).is_zero());
  }
}

TEST(Smith, AdjugateIdentity) {
  std::mt19937_64 rng(13);
  Ring R = f9();
  for (int it = 0; it < 40; ++it) {
    PolyMatrix A = random_poly_matrix(R, 1 + rng() % 4, 2, rng);
    PolyMatrix adj = adjugate(A);
    PolyMatrix dI = times(det(A), poly_identity(R, A.rows()));
    EXPECT_EQ(A * adj, dI);
    EXPECT_EQ(adj * A, dI);
  }
}

TEST(Smith, DeterminantMatchesProductOfDiagonal) {
  std::mt19937_64 rng(14);
  Ring R = f4();
  for (int it = 0; it < 40; ++it) {
    PolyMatrix A = random_poly_matrix(R, 1 + rng() % 4, 2, rng);
    Poly prod = Poly::constant(R.one());
    for (const auto& d : smith_normal_form(A).diagonal()) prod *= d;
    Poly dA = det(A);
    if (dA.is_zero()) {
      EXPECT_TRUE(prod.is_zero());
    } else {
      EXPECT_EQ(prod, dA.monic());
    }
  }
}

TEST(Cokernel, CoordinatesLiftAndTAction) {
  std::mt19937_64 rng(15);
  Ring R = f4();
  for (int it = 0; it < 30; ++it) {
    PolyMatrix A = random_poly_matrix(R, 1 + rng() % 3, 2, rng);
    if (det(A).is_zero()) continue;
    Cokernel C(A);
    EXPECT_EQ(C.dim(), static_cast<std::size_t>(det(A).degree()));
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (const auto& c : C.coords(A.column(j))) EXPECT_TRUE(c.is_zero());
    std::vector<Elem> c;
    for (std::size_t b = 0; b < C.dim(); ++b) c.push_back(random_elem(R, rng));
    EXPECT_EQ(C.coords(C.lift(c)), c);
    // solve inverts A on its image
    std::vector<Poly> x;
    for (std::size_t i = 0; i < A.rows(); ++i) x.push_back(random_poly(R, 2, rng));
    auto y = C.solve(mat_vec(A, x));
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(*y, x);
    // t acts with characteristic polynomial det(A) up to a unit
    ElemMatrix Tm = C.t_action();
    if (C.dim() > 0) {
      Poly charpoly = det(PolyMatrix(scalar_poly_matrix(Tm).map([](const Poly& p) { return -p; })) +
                          times(Poly::var(R), poly_identity(R, C.dim())));
      EXPECT_EQ(charpoly, det(A).monic());
    }
  }
}

TEST(Cokernel, SingularMatrixIsRejected) {
  Ring R = f2();
  expect_error(ErrorKind::NotAnIsogeny, [&] { Cokernel C(poly_zero(R, 2, 2)); });
}
