#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace biorth {

/// Dense real matrix; the carrier type for every module.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws DimensionError unless `m` is square.
void require_square(const Matrix& m, std::string_view what);
/// Throws DimensionError unless `a` and `b` have identical shapes.
void require_same_shape(const Matrix& a, const Matrix& b, std::string_view what);
/// Throws NumericalError if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

/// Thin SVD of a square matrix, m = u * diag(s) * v^T.
///
/// `s` is non-negative and sorted non-increasing; `u` and `v` are orthogonal.
/// Sign conventions and the order of tied singular values are unspecified.
struct SvdResult {
  Matrix u;
  Vector s;
  Matrix v;
};

/// One-sided (Hestenes) Jacobi SVD. Deterministic for a fixed input.
/// Throws DimensionError for non-square input and NumericalError when the
/// sweep cap is reached before the columns are mutually orthogonal.
SvdResult svd(const Matrix& m);

/// Matrix exponential by scaling and squaring over a diagonal Pade core
/// (degree 3, 5, 7, 9 or 13 selected from the 1-norm).
Matrix mat_exp(const Matrix& m);

/// Frobenius inner product sum_ij a_ij b_ij.
double fro_inner(const Matrix& a, const Matrix& b);
double fro_norm(const Matrix& a);

/// Element-wise product.
Matrix hadamard(const Matrix& a, const Matrix& b);

}  // namespace biorth
