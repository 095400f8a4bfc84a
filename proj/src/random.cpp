#include "biorth/random.hpp"

#include <cmath>

namespace biorth {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
  do {
    a = 2.0 * uniform() - 1.0;
    b = 2.0 * uniform() - 1.0;
    r = a * a + b * b;
  } while (r >= 1.0 || r == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(r) / r);
  spare_ = b * factor;
  has_spare_ = true;
  return a * factor;
}

Matrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gaussian();
  }
  return m;
}

}  // namespace biorth
