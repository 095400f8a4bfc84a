#pragma once

#include "biorth/manifold.hpp"

#include <string_view>

namespace biorth {

/// The flat product space M(n) x M(n). Projection is the identity, the
/// retraction is p + t and the metric is the ambient Frobenius product.
/// The penalty relaxation runs here.
class EuclideanManifold {
 public:
  using Point = MatrixPair;
  using Tangent = MatrixPair;

  static constexpr std::string_view name = "euclidean";

  const MatrixPair& coordinates(const Point& p) const { return p; }
  const MatrixPair& ambient(const Tangent& t) const { return t; }

  Tangent project(const Point& p, const AmbientPair& a) const;
  Point retract(const Point& p, const Tangent& t) const;
  double metric(const Point& p, const Tangent& a, const Tangent& b) const;
  /// ||XY - I||_F, reported for comparison with the constrained solver.
  double feasibility_error(const Point& p) const;
  /// (I + scale G1, I + scale G2) with Gaussian G1, G2.
  Point random_point(std::uint64_t seed, Eigen::Index n, double scale) const;
  /// Gaussian pair rescaled to norm `scale`.
  Tangent random_tangent(std::uint64_t seed, const Point& p, double scale) const;
  Tangent transport(const Point& to, const Tangent& t) const;
};

static_assert(Manifold<EuclideanManifold>);

}  // namespace biorth
