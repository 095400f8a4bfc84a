#include "biorth/manifold.hpp"

#include "biorth/errors.hpp"

#include <cmath>
#include <string>

namespace biorth {

MatrixPair& MatrixPair::operator+=(const MatrixPair& o) {
  require_same_shape(x, o.x, "pair +");
  require_same_shape(y, o.y, "pair +");
  x += o.x;
  y += o.y;
  return *this;
}

MatrixPair& MatrixPair::operator-=(const MatrixPair& o) {
  require_same_shape(x, o.x, "pair -");
  require_same_shape(y, o.y, "pair -");
  x -= o.x;
  y -= o.y;
  return *this;
}

MatrixPair& MatrixPair::operator*=(double s) {
  x *= s;
  y *= s;
  return *this;
}

MatrixPair operator+(MatrixPair a, const MatrixPair& b) { return a += b; }
MatrixPair operator-(MatrixPair a, const MatrixPair& b) { return a -= b; }
MatrixPair operator-(MatrixPair a) { return a *= -1.0; }
MatrixPair operator*(double s, MatrixPair a) { return a *= s; }

void require_square_pair(const MatrixPair& p, std::string_view what) {
  require_square(p.x, what);
  require_same_shape(p.x, p.y, what);
}

double pair_inner(const MatrixPair& a, const MatrixPair& b) {
  return fro_inner(a.x, b.x) + fro_inner(a.y, b.y);
}

double pair_norm(const MatrixPair& a) { return std::sqrt(pair_inner(a, a)); }

double product_defect(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows() || x.rows() != y.cols()) {
    throw DimensionError("product_defect: incompatible shapes");
  }
  Matrix d = x * y;
  d.diagonal().array() -= 1.0;
  return d.norm();
}

}  // namespace biorth
