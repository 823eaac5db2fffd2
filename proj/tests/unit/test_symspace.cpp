#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Dense>

#include <dicke/errors.hpp>
#include <dicke/symspace.hpp>

#include "oracles.hpp"

using namespace dicke;

namespace {

DenseMatrix dense(const SparseOperator& s) { return DenseMatrix(s); }

std::size_t at(const SymmetricBasis& b, int n1, int n2, int ne) {
  const auto i = b.index_of({n1, n2, ne});
  EXPECT_TRUE(i.has_value());
  return *i;
}

}  // namespace

TEST(Basis, SingleAtomStates) {
  const auto b = SymmetricBasis::build(1);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], (BasisState{1, 0, 0}));
  EXPECT_EQ(b[1], (BasisState{0, 1, 0}));
  EXPECT_EQ(b[2], (BasisState{0, 0, 1}));
}

TEST(Basis, DimensionFormula) {
  EXPECT_EQ(SymmetricBasis::build(14).size(), 120u);
  EXPECT_EQ(SymmetricBasis::build(30).size(), 496u);
  for (int n = 1; n <= 60; ++n) {
    const auto b = SymmetricBasis::build(n);
    EXPECT_EQ(b.size(), static_cast<std::size_t>((n + 1) * (n + 2) / 2)) << n;
    EXPECT_EQ(b.size(), SymmetricBasis::dimension(n));
  }
}

TEST(Basis, LexicographicAndComplete) {
  const auto b = SymmetricBasis::build(7);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& s = b[i];
    EXPECT_GE(s.n1, 0);
    EXPECT_GE(s.n2, 0);
    EXPECT_GE(s.ne, 0);
    EXPECT_EQ(s.n1 + s.n2 + s.ne, 7);
    EXPECT_EQ(b.index_of(s), i);
    if (i > 0) {
      const auto& p = b[i - 1];
      EXPECT_TRUE(p.n1 > s.n1 || (p.n1 == s.n1 && p.n2 > s.n2));
    }
  }
  EXPECT_FALSE(b.index_of({3, 3, 3}).has_value());
}

TEST(Basis, RejectsOutOfRangeN) {
  EXPECT_THROW(SymmetricBasis::build(0), InvalidParameter);
  EXPECT_THROW(SymmetricBasis::build(61), InvalidParameter);
  EXPECT_NO_THROW(SymmetricBasis::build(61, 61));
}

TEST(NumberOps, DiagonalEntries) {
  const auto b1 = SymmetricBasis::build(1);
  const auto n1 = number_operators(b1);
  const auto k = at(b1, 0, 0, 1);
  EXPECT_EQ(dense(n1.ne)(k, k), cplx(1.0));
  EXPECT_EQ(dense(n1.n1)(k, k), cplx(0.0));
  EXPECT_EQ(dense(n1.n2)(k, k), cplx(0.0));

  const auto b2 = SymmetricBasis::build(2);
  const auto n2 = number_operators(b2);
  const auto j = at(b2, 1, 0, 1);
  EXPECT_EQ(dense(n2.n1)(j, j), cplx(1.0));
  EXPECT_EQ(dense(n2.ne)(j, j), cplx(1.0));
}

TEST(NumberOps, SumIsNTimesIdentity) {
  for (int n : {1, 3, 9}) {
    const auto b = SymmetricBasis::build(n);
    const auto ops = number_operators(b);
    const DenseMatrix sum = dense(ops.n1) + dense(ops.n2) + dense(ops.ne);
    const auto d = static_cast<Eigen::Index>(b.size());
    EXPECT_EQ((sum - static_cast<double>(n) * DenseMatrix::Identity(d, d)).norm(), 0.0);
    EXPECT_EQ(sum.trace(), cplx(static_cast<double>(n) * static_cast<double>(b.size())));
    for (const DenseMatrix& m : {dense(ops.n1), dense(ops.n2), dense(ops.ne)}) {
      EXPECT_TRUE(m.isDiagonal());
      EXPECT_EQ(m.imag().norm(), 0.0);
    }
  }
}

TEST(Lowering, MatrixElements) {
  const auto b1 = SymmetricBasis::build(1);
  const DenseMatrix s1 = dense(lowering_operator(b1, Branch::one));
  EXPECT_DOUBLE_EQ(s1(at(b1, 1, 0, 0), at(b1, 0, 0, 1)).real(), 1.0);

  const auto b2 = SymmetricBasis::build(2);
  const DenseMatrix s1b = dense(lowering_operator(b2, Branch::one));
  const DenseMatrix s2b = dense(lowering_operator(b2, Branch::two));
  EXPECT_DOUBLE_EQ(s1b(at(b2, 1, 0, 1), at(b2, 0, 0, 2)).real(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(s2b(at(b2, 1, 1, 0), at(b2, 1, 0, 1)).real(), 1.0);
}

TEST(Lowering, OneEntryPerExcitedSourceState) {
  const auto b = SymmetricBasis::build(6);
  for (Branch br : {Branch::one, Branch::two}) {
    const DenseMatrix s = dense(lowering_operator(b, br));
    for (std::size_t col = 0; col < b.size(); ++col) {
      const auto& src = b[col];
      int nonzero = 0;
      for (std::size_t row = 0; row < b.size(); ++row) {
        const cplx v = s(row, col);
        if (v == cplx(0.0)) continue;
        ++nonzero;
        const auto& dst = b[row];
        EXPECT_EQ(dst.ne, src.ne - 1);
        const int gained = br == Branch::one ? src.n1 + 1 : src.n2 + 1;
        EXPECT_EQ(br == Branch::one ? dst.n1 : dst.n2, gained);
        EXPECT_DOUBLE_EQ(v.real(), std::sqrt(static_cast<double>(gained * src.ne)));
      }
      EXPECT_EQ(nonzero, src.ne > 0 ? 1 : 0);
    }
  }
}

TEST(Lowering, JumpProductsArePositiveSemidefinite) {
  for (int n = 1; n <= 6; ++n) {
    const auto b = SymmetricBasis::build(n);
    for (Branch br : {Branch::one, Branch::two}) {
      const DenseMatrix s = dense(lowering_operator(b, br));
      const DenseMatrix m = s.adjoint() * s;
      EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    }
  }
}

TEST(Lowering, CommutesWithTotalNumber) {
  for (int n = 1; n <= 6; ++n) {
    const auto b = SymmetricBasis::build(n);
    const auto ops = number_operators(b);
    const DenseMatrix total = dense(ops.n1) + dense(ops.n2) + dense(ops.ne);
    for (Branch br : {Branch::one, Branch::two}) {
      const DenseMatrix s = dense(lowering_operator(b, br));
      EXPECT_EQ((total * s - s * total).cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

TEST(Quadrature, Examples) {
  const auto b1 = SymmetricBasis::build(1);
  const DenseMatrix x = dense(quadrature(lowering_operator(b1, Branch::one)));
  DenseMatrix expected = DenseMatrix::Zero(3, 3);
  expected(0, 2) = expected(2, 0) = 1.0;
  EXPECT_EQ((x - expected).norm(), 0.0);

  const auto ops = number_operators(SymmetricBasis::build(3));
  EXPECT_EQ((dense(quadrature(ops.n1)) - 2.0 * dense(ops.n1)).norm(), 0.0);

  const auto b4 = SymmetricBasis::build(4);
  const DenseMatrix q = dense(quadrature(lowering_operator(b4, Branch::two)));
  EXPECT_EQ((q - q.adjoint()).norm(), 0.0);

  EXPECT_THROW(quadrature(SparseOperator(2, 3)), InvalidParameter);
}

TEST(ProductState, Examples) {
  const double eps = 0.1;
  const auto b1 = SymmetricBasis::build(1);
  const auto psi = symmetric_product_state(b1, eps, eps, std::sqrt(1 - 2 * eps * eps));
  EXPECT_NEAR(std::abs(psi.amplitudes()[0] - cplx(0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitudes()[1] - cplx(0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitudes()[2] - cplx(std::sqrt(0.98))), 0.0, 1e-15);

  const auto b2 = SymmetricBasis::build(2);
  const auto inverted = symmetric_product_state(b2, 0.0, 0.0, 1.0);
  for (std::size_t i = 0; i < b2.size(); ++i)
    EXPECT_EQ(inverted.amplitudes()[static_cast<Eigen::Index>(i)],
              cplx(i == at(b2, 0, 0, 2) ? 1.0 : 0.0));

  const cplx c1(0.6, 0.1), c2(0.0, -0.3), c3 = std::sqrt(1.0 - std::norm(c1) - std::norm(c2));
  const auto general = symmetric_product_state(b2, c1, c2, c3);
  EXPECT_NEAR(std::abs(general.amplitudes()[static_cast<Eigen::Index>(at(b2, 1, 0, 1))] -
                       std::sqrt(2.0) * c1 * c3),
              0.0, 1e-15);
}

TEST(ProductState, MatchesBruteForceTensorExpansion) {
  const cplx triples[][3] = {
      {0.1, 0.1, std::sqrt(0.98)},
      {std::sqrt(0.5), 0.0, std::sqrt(0.5)},
      {cplx(0.3, 0.2), cplx(0.0, -0.4), cplx(0.5, 0.1)},
  };
  for (const auto& c : triples) {
    const double norm = std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
    for (int n = 1; n <= 4; ++n) {
      const auto b = SymmetricBasis::build(n);
      const auto ours = symmetric_product_state(b, c[0] / norm, c[1] / norm, c[2] / norm);
      const auto ref = oracle::brute_force_product_state(b, c[0] / norm, c[1] / norm, c[2] / norm);
      EXPECT_LT(ref.leakage, 1e-12);
      EXPECT_LT((ours.amplitudes() - ref.amplitudes).cwiseAbs().maxCoeff(), 1e-12) << n;
      EXPECT_NEAR(ours.amplitudes().norm(), 1.0, 1e-12);
    }
  }
}

TEST(ProductState, RejectsUnnormalizedAmplitudes) {
  const auto b = SymmetricBasis::build(2);
  EXPECT_THROW(symmetric_product_state(b, 1.0, 1.0, 0.0), InvalidParameter);
  EXPECT_THROW(StateVector(ComplexVector::Constant(3, 1.0)), InvalidParameter);
}

TEST(Operators, ReproducibleBitForBit) {
  const auto a = lowering_operator(SymmetricBasis::build(12), Branch::one);
  const auto b = lowering_operator(SymmetricBasis::build(12), Branch::one);
  ASSERT_EQ(a.nonZeros(), b.nonZeros());
  EXPECT_EQ(DenseMatrix(a - b).norm(), 0.0);
  EXPECT_EQ(identity_operator(SymmetricBasis::build(3)).nonZeros(), 10);
}
