#pragma once

#include "biorth/manifold.hpp"

#include <memory>
#include <optional>
#include <string_view>

namespace biorth {

/// Default feasibility tolerance for ||XY - I||_F at size n.
inline double default_feas_tol(Eigen::Index n) { return 1e-9 * static_cast<double>(n); }
/// Default tangent tolerance for ||X0 V + U Y0||_F at size n, relative to
/// max(1, ||(U, V)||).
inline double default_tan_tol(Eigen::Index n) { return 1e-9 * static_cast<double>(n); }

/// SVDs of both legs of a point, computed once per point on first use.
struct PointFactors {
  SvdResult x;
  SvdResult y;
};

/// A pair (X, Y) of n x n matrices with XY = I up to a tolerance.
///
/// Copies share the lazily computed factorization, so passing points around
/// by value is cheap after the first projection.
class BiorthPoint {
 public:
  /// Throws DimensionError on shape mismatch, NumericalError on non-finite
  /// entries and InvalidPointError when ||XY - I||_F > tol
  /// (default_feas_tol(n) when omitted).
  BiorthPoint(Matrix x, Matrix y, std::optional<double> tol = std::nullopt);

  static BiorthPoint identity(Eigen::Index n);

  const Matrix& x() const { return xy_.x; }
  const Matrix& y() const { return xy_.y; }
  const MatrixPair& pair() const { return xy_; }
  Eigen::Index dim() const { return xy_.x.rows(); }
  /// ||XY - I||_F measured at construction.
  double feasibility_error() const { return feas_err_; }

  const PointFactors& factors() const;

  /// True for copies of one point or bitwise-equal coordinates.
  bool same_as(const BiorthPoint& other) const;

 private:
  struct Cache;

  MatrixPair xy_;
  double feas_err_ = 0.0;
  std::shared_ptr<Cache> cache_;
};

/// A tangent vector (U, V) at `base`, i.e. X0 V + U Y0 = 0.
class TangentPair {
 public:
  /// Throws InvalidTangentError when ||X0 V + U Y0||_F > tol * max(1, ||(U,V)||)
  /// (tol = default_tan_tol(n) when omitted).
  TangentPair(BiorthPoint base, Matrix u, Matrix v,
              std::optional<double> tol = std::nullopt);

  static TangentPair zero(const BiorthPoint& base);

  const Matrix& u() const { return uv_.x; }
  const Matrix& v() const { return uv_.y; }
  const MatrixPair& pair() const { return uv_; }
  const BiorthPoint& base() const { return base_; }
  /// ||X0 V + U Y0||_F
  double residual() const;

  friend TangentPair operator+(const TangentPair& a, const TangentPair& b);
  friend TangentPair operator-(const TangentPair& a, const TangentPair& b);
  friend TangentPair operator*(double s, const TangentPair& t);
  friend TangentPair operator-(const TangentPair& t);

 private:
  struct Unchecked {};
  TangentPair(Unchecked, BiorthPoint base, MatrixPair uv);

  BiorthPoint base_;
  MatrixPair uv_;
};

/// (a1, a2) * (b1, b2) = (a1 b1, b2 a2).
MatrixPair pair_product(const MatrixPair& a, const MatrixPair& b);
/// Group product; the result is again on BO(n).
BiorthPoint pair_product(const BiorthPoint& a, const BiorthPoint& b);
/// (X, Y)^{-1} = (Y, X).
BiorthPoint pair_inverse(const BiorthPoint& p);

struct MembershipResult {
  bool on_manifold;
  double error;
};

/// Reports whether ||xy - I||_F <= tol, together with the measured defect.
MembershipResult is_on_manifold(const Matrix& x, const Matrix& y, double tol);

/// Orthogonal projection of an ambient pair onto the tangent space at `p`.
///
/// Returns the minimiser of ||X - Phi||^2 + ||Y - Psi||^2 subject to
/// X0 Y + X Y0 = 0. With X0 = Ux Sx Vx^T and Y0 = Uy Sy Vy^T the correction
/// (X - Phi, Y - Psi) rotated into those bases decouples into n^2 scalar
/// minimum-norm problems beta_j x + alpha_i y = c_ij.
TangentPair project_tangent(const BiorthPoint& p, const AmbientPair& a);

/// Exponential retraction transported from the identity:
/// (X0 e^W, e^{-W} Y0) with W = Y0 U.
BiorthPoint retract(const BiorthPoint& p, const TangentPair& t);

/// Ambient Frobenius metric on T_p BO(n). Both tangents must be based at p.
double metric(const BiorthPoint& p, const TangentPair& a, const TangentPair& b);

/// (e^{scale G}, e^{-scale G}) with G standard Gaussian.
BiorthPoint random_point(std::uint64_t seed, Eigen::Index n, double scale);

/// Gaussian U with V = -Y0 U Y0, rescaled so that ||(U, V)|| = scale.
TangentPair random_tangent(std::uint64_t seed, const BiorthPoint& p, double scale);

/// BO(n) with the ambient metric and the exponential retraction. Vector
/// transport is re-projection onto the destination tangent space.
class BiorthogonalManifold {
 public:
  using Point = BiorthPoint;
  using Tangent = TangentPair;

  static constexpr std::string_view name = "biorthogonal";

  const MatrixPair& coordinates(const Point& p) const { return p.pair(); }
  const MatrixPair& ambient(const Tangent& t) const { return t.pair(); }

  Tangent project(const Point& p, const AmbientPair& a) const {
    return project_tangent(p, a);
  }
  Point retract(const Point& p, const Tangent& t) const { return biorth::retract(p, t); }
  double metric(const Point& p, const Tangent& a, const Tangent& b) const {
    return biorth::metric(p, a, b);
  }
  double feasibility_error(const Point& p) const { return p.feasibility_error(); }
  Point random_point(std::uint64_t seed, Eigen::Index n, double scale) const {
    return biorth::random_point(seed, n, scale);
  }
  Tangent random_tangent(std::uint64_t seed, const Point& p, double scale) const {
    return biorth::random_tangent(seed, p, scale);
  }
  Tangent transport(const Point& to, const Tangent& t) const {
    return project_tangent(to, t.pair());
  }
};

static_assert(Manifold<BiorthogonalManifold>);

}  // namespace biorth
