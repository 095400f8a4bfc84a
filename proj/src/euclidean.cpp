#include "biorth/euclidean.hpp"

#include "biorth/random.hpp"

namespace biorth {

EuclideanManifold::Tangent EuclideanManifold::project(const Point& p,
                                                      const AmbientPair& a) const {
  require_same_shape(p.x, a.x, "euclidean project");
  require_same_shape(p.y, a.y, "euclidean project");
  return a;
}

EuclideanManifold::Point EuclideanManifold::retract(const Point& p, const Tangent& t) const {
  return p + t;
}

double EuclideanManifold::metric(const Point& p, const Tangent& a, const Tangent& b) const {
  require_same_shape(p.x, a.x, "euclidean metric");
  return pair_inner(a, b);
}

double EuclideanManifold::feasibility_error(const Point& p) const {
  return product_defect(p.x, p.y);
}

EuclideanManifold::Point EuclideanManifold::random_point(std::uint64_t seed, Eigen::Index n,
                                                         double scale) const {
  Rng rng(seed);
  const Matrix ident = Matrix::Identity(n, n);
  Matrix x = ident + scale * rng.gaussian_matrix(n, n);
  Matrix y = ident + scale * rng.gaussian_matrix(n, n);
  return {std::move(x), std::move(y)};
}

EuclideanManifold::Tangent EuclideanManifold::random_tangent(std::uint64_t seed,
                                                             const Point& p,
                                                             double scale) const {
  Rng rng(seed);
  MatrixPair t{rng.gaussian_matrix(p.x.rows(), p.x.cols()),
               rng.gaussian_matrix(p.y.rows(), p.y.cols())};
  const double norm = pair_norm(t);
  return (norm > 0.0 ? scale / norm : 0.0) * std::move(t);
}

EuclideanManifold::Tangent EuclideanManifold::transport(const Point& to,
                                                        const Tangent& t) const {
  return project(to, t);
}

}  // namespace biorth
