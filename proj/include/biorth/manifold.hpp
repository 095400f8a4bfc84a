#pragma once

#include "biorth/linalg.hpp"

#include <concepts>
#include <cstdint>

namespace biorth {

/// An ordered pair of equally sized matrices. Used for ambient vectors
/// (Euclidean gradients, the (Phi, Psi) input of a projection) and as the
/// point/tangent type of the Euclidean product space.
struct MatrixPair {
  Matrix x;
  Matrix y;

  Eigen::Index dim() const { return x.rows(); }

  MatrixPair& operator+=(const MatrixPair& o);
  MatrixPair& operator-=(const MatrixPair& o);
  MatrixPair& operator*=(double s);
};

using AmbientPair = MatrixPair;

MatrixPair operator+(MatrixPair a, const MatrixPair& b);
MatrixPair operator-(MatrixPair a, const MatrixPair& b);
MatrixPair operator-(MatrixPair a);
MatrixPair operator*(double s, MatrixPair a);

/// Throws DimensionError unless both legs are n x n with the same n.
void require_square_pair(const MatrixPair& p, std::string_view what);

/// <a.x, b.x>_F + <a.y, b.y>_F
double pair_inner(const MatrixPair& a, const MatrixPair& b);
double pair_norm(const MatrixPair& a);

/// ||x y - I||_F
double product_defect(const Matrix& x, const Matrix& y);

/// The contract shared by every manifold a solver can run on.
///
/// `Point` and `Tangent` are value types. Tangents support `t + t`, `s * t`
/// and unary minus. `transport` carries a tangent from any point to the tangent
/// space at `to`.
template <class M>
concept Manifold = requires(const M& m, const typename M::Point& p,
                            const typename M::Tangent& t, const AmbientPair& a,
                            std::uint64_t seed, Eigen::Index n, double s) {
  { m.coordinates(p) } -> std::convertible_to<const MatrixPair&>;
  { m.ambient(t) } -> std::convertible_to<const MatrixPair&>;
  { m.project(p, a) } -> std::same_as<typename M::Tangent>;
  { m.retract(p, t) } -> std::same_as<typename M::Point>;
  { m.metric(p, t, t) } -> std::convertible_to<double>;
  { m.feasibility_error(p) } -> std::convertible_to<double>;
  { m.random_point(seed, n, s) } -> std::same_as<typename M::Point>;
  { m.random_tangent(seed, p, s) } -> std::same_as<typename M::Tangent>;
  { m.transport(p, t) } -> std::same_as<typename M::Tangent>;
  { t + t } -> std::same_as<typename M::Tangent>;
  { s * t } -> std::same_as<typename M::Tangent>;
  { -t } -> std::same_as<typename M::Tangent>;
};

}  // namespace biorth
