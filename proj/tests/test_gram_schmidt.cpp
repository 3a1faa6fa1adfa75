#include <gtest/gtest.h>

#include "trigmoment/gram_schmidt.hpp"

using namespace trigmoment;

TEST(GramSchmidt, ProducesOrthonormalColumns) {
  GramSchmidt gs(5, 1.0);
  CMatrix v = CMatrix::Random(5, 4);
  for (int j = 0; j < 4; ++j) EXPECT_TRUE(gs.append(v.col(j)));
  const CMatrix q = gs.basis();
  EXPECT_LT(max_abs(q.adjoint() * q - CMatrix::Identity(4, 4)), 1e-14);
  // Same span as the input.
  EXPECT_LT(max_abs(q * (q.adjoint() * v) - v), 1e-13);
}

TEST(GramSchmidt, DropsDependentCandidates) {
  GramSchmidt gs(4, 1.0);
  CVector a = CVector::Random(4), b = CVector::Random(4);
  EXPECT_TRUE(gs.append(a));
  EXPECT_TRUE(gs.append(b));
  EXPECT_FALSE(gs.append(Complex(2, 1) * a - 3.0 * b));
  EXPECT_FALSE(gs.append(CVector::Zero(4)));
  EXPECT_EQ(gs.size(), 2);
}

TEST(GramSchmidt, ReferenceScaleCatchesCancellation) {
  // A difference of two nearly equal large vectors is numerically zero
  // relative to the scale of the data, though not relative to itself.
  CVector x = CVector::Random(3) * 1e3;
  CVector y = x;
  y(0) += 1e-9;
  GramSchmidt relative_only(3, 0.0);
  EXPECT_TRUE(relative_only.append(x - y));
  GramSchmidt scaled(3, x.norm());
  EXPECT_FALSE(scaled.append(x - y));
}

TEST(GramSchmidt, ContinuesAGivenBasisAndReportsTail) {
  CMatrix e = CMatrix::Identity(4, 2);
  GramSchmidt gs(e, 1.0);
  CVector c = CVector::Ones(4);
  EXPECT_TRUE(gs.append(c));
  ASSERT_EQ(gs.size(), 3);
  const CMatrix t = gs.tail(2);
  ASSERT_EQ(t.cols(), 1);
  EXPECT_NEAR(std::abs(t(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t(2, 0)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(GramSchmidt, InnerProductIsLinearInFirstArgument) {
  CVector a = CVector::Random(3), b = CVector::Random(3);
  const Complex c(0.3, -1.2);
  EXPECT_NEAR(std::abs(inner(c * a, b) - c * inner(a, b)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(a, c * b) - std::conj(c) * inner(a, b)), 0.0, 1e-14);
}
