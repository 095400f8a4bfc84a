#include "biorth/errors.hpp"
#include "biorth/linalg.hpp"
#include "biorth/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace biorth;

namespace {

void expect_valid_svd(const Matrix& m, const SvdResult& r, double rel_tol) {
  const Eigen::Index n = m.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const double scale = std::max(m.norm(), 1.0);
  EXPECT_LE((r.u * r.s.asDiagonal() * r.v.transpose() - m).norm(), rel_tol * scale);
  EXPECT_LE((r.u.transpose() * r.u - ident).norm(), 1e-12 * n);
  EXPECT_LE((r.v.transpose() * r.v - ident).norm(), 1e-12 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    EXPECT_GE(r.s(i), 0.0);
    if (i > 0) EXPECT_LE(r.s(i), r.s(i - 1));
  }
}

}  // namespace

TEST(Svd, Identity) {
  const SvdResult r = svd(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(r.s(i), 1.0);
  expect_valid_svd(Matrix::Identity(3, 3), r, 1e-15);
}

TEST(Svd, DiagonalGivesSignedPermutations) {
  Matrix m(2, 2);
  m << 1, 0, 0, 3;
  const SvdResult r = svd(m);
  EXPECT_DOUBLE_EQ(r.s(0), 3.0);
  EXPECT_DOUBLE_EQ(r.s(1), 1.0);
  for (const Matrix* q : {&r.u, &r.v})
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) {
        const double a = std::abs((*q)(i, j));
        EXPECT_TRUE(a == 0.0 || a == 1.0) << a;
      }
  expect_valid_svd(m, r, 1e-15);
}

TEST(Svd, SeededRandom5x5Reconstruction) {
  Rng rng(5);
  const Matrix m = rng.gaussian_matrix(5, 5);
  const SvdResult r = svd(m);
  EXPECT_LE((r.u * r.s.asDiagonal() * r.v.transpose() - m).norm(), 5e-12 * m.norm());
}

TEST(Svd, ManySeededMatrices) {
  for (int t = 0; t < 120; ++t) {
    const Eigen::Index n = 2 + t % 49;
    Rng rng(1000 + t);
    const Matrix m = rng.gaussian_matrix(n, n);
    expect_valid_svd(m, svd(m), 1e-12 * n);
  }
}

TEST(Svd, RankDeficientKeepsOrthogonalFactors) {
  Rng rng(3);
  const Matrix a = rng.gaussian_matrix(6, 2);
  const Matrix m = a * a.transpose();
  const SvdResult r = svd(m);
  expect_valid_svd(m, r, 1e-12);
  EXPECT_LE(r.s(5), 1e-12 * r.s(0));
  expect_valid_svd(Matrix::Zero(4, 4), svd(Matrix::Zero(4, 4)), 1e-15);
}

TEST(Svd, SingularValuesMatchEigenReference) {
  Rng rng(17);
  const Matrix m = rng.gaussian_matrix(12, 12);
  const Vector ref = Eigen::JacobiSVD<Matrix>(m).singularValues();
  EXPECT_LE((svd(m).s - ref).norm(), 1e-12 * ref(0));
}

TEST(Svd, Errors) {
  EXPECT_THROW(svd(Matrix::Zero(2, 3)), DimensionError);
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(svd(m), NumericalError);
}

TEST(MatExp, Zero) {
  EXPECT_EQ(mat_exp(Matrix::Zero(4, 4)), Matrix::Identity(4, 4));
}

TEST(MatExp, Nilpotent) {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  Matrix want(2, 2);
  want << 1, 1, 0, 1;
  EXPECT_LE((mat_exp(m) - want).norm(), 1e-15);
}

TEST(MatExp, DiagonalLogs) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::log(2.0);
  m(1, 1) = std::log(3.0);
  const Matrix e = mat_exp(m);
  EXPECT_NEAR(e(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(e(1, 1), 3.0, 1e-14);
  EXPECT_EQ(e(0, 1), 0.0);
  EXPECT_EQ(e(1, 0), 0.0);
}

TEST(MatExp, MatchesLongDoubleTaylor) {
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 2 + t % 9;
    Rng rng(200 + t);
    Matrix g = rng.gaussian_matrix(n, n);
    g *= (0.01 + 8.0 * rng.uniform()) / g.norm();
    const Matrix ref = oracle::taylor_exp(g);
    EXPECT_LE((mat_exp(g) - ref).norm(), 1e-13 * ref.norm()) << "trial " << t;
  }
}

TEST(MatExp, InverseIdentity) {
  for (Eigen::Index n : {2, 5, 10, 20, 50, 100}) {
    Rng rng(n);
    Matrix g = rng.gaussian_matrix(n, n);
    g *= 10.0 / g.norm();
    const Matrix ident = Matrix::Identity(n, n);
    EXPECT_LE((mat_exp(g) * mat_exp(-g) - ident).norm(), 1e-11 * n);
  }
}

TEST(MatExp, Errors) {
  EXPECT_THROW(mat_exp(Matrix::Zero(2, 3)), DimensionError);
  EXPECT_THROW(mat_exp(Matrix::Constant(2, 2, 1e6)), NumericalError);
  Matrix m = Matrix::Zero(2, 2);
  m(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(mat_exp(m), NumericalError);
}

TEST(FroInner, Examples) {
  EXPECT_DOUBLE_EQ(fro_inner(Matrix::Identity(4, 4), Matrix::Identity(4, 4)), 4.0);
  Rng rng(1);
  const Matrix a = rng.gaussian_matrix(3, 4);
  EXPECT_EQ(fro_inner(a, Matrix::Zero(3, 4)), 0.0);
  const Matrix b = rng.gaussian_matrix(3, 4);
  const double want = oracle::element_sum_inner(a, b);
  EXPECT_LE(std::abs(fro_inner(a, b) - want), 1e-14 * std::abs(want));
  EXPECT_DOUBLE_EQ(fro_norm(a), std::sqrt(oracle::element_sum_inner(a, a)));
  EXPECT_THROW(fro_inner(a, Matrix::Zero(4, 3)), DimensionError);
}

TEST(Hadamard, Examples) {
  Rng rng(2);
  const Matrix a = rng.gaussian_matrix(3, 3);
  EXPECT_EQ(hadamard(a, Matrix::Ones(3, 3)), a);
  EXPECT_EQ(hadamard(a, Matrix::Zero(3, 3)), Matrix::Zero(3, 3));
  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2), want = Matrix::Zero(2, 2);
  d1.diagonal() << 2, 3;
  d2.diagonal() << 4, 5;
  want.diagonal() << 8, 15;
  EXPECT_EQ(hadamard(d1, d2), want);
  EXPECT_THROW(hadamard(a, Matrix::Zero(2, 3)), DimensionError);
}

TEST(Rng, DeterministicAndRoughlyStandard) {
  Rng a(42), b(42);
  EXPECT_EQ(a.gaussian_matrix(5, 7), b.gaussian_matrix(5, 7));
  Rng c(9);
  const Matrix g = c.gaussian_matrix(200, 200);
  const double mean = g.mean();
  const double var = (g.array() - mean).square().mean();
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.03);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
