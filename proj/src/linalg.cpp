#include "biorth/linalg.hpp"

#include "biorth/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace biorth {

namespace {

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

double dot(const double* a, const double* b, Eigen::Index n) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) acc += a[k] * b[k];
  return acc;
}

// [a b] <- [a b] * [[c, s], [-s, c]]
void rotate(double* a, double* b, Eigen::Index n, double c, double s) {
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ak = a[k];
    const double bk = b[k];
    a[k] = c * ak - s * bk;
    b[k] = s * ak + c * bk;
  }
}

constexpr int kMaxSweeps = 80;

// Fills columns of `u` whose singular value is zero with an orthonormal
// completion of the remaining columns (modified Gram-Schmidt against e_k).
void complete_basis(Matrix& u, const Vector& s) {
  const Eigen::Index n = u.rows();
  Eigen::Index next_unit = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (s[j] > 0.0) continue;
    for (; next_unit < n; ++next_unit) {
      Vector cand = Vector::Unit(n, next_unit);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < n; ++i) {
          if (i == j) continue;
          cand -= u.col(i).dot(cand) * u.col(i);
        }
      }
      const double norm = cand.norm();
      if (norm > 0.5) {
        u.col(j) = cand / norm;
        ++next_unit;
        break;
      }
    }
  }
}

// Pade numerator/denominator pieces: exp(A) ~ (V - U)^{-1} (V + U).
template <std::size_t N>
void pade_odd_even(const Matrix& a, const std::array<double, N>& b, Matrix& u,
                   Matrix& v) {
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = ident;
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  for (std::size_t k = 2; k + 1 < N; k += 2) {
    power = power * a2;
    even += b[k] * power;
    odd += b[k + 1] * power;
  }
  u = a * odd;
  v = even;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
  constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

}  // namespace

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         shape_of(m));
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + shape_of(a) +
                         " vs " + shape_of(b));
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw NumericalError(std::string(what) + ": non-finite entry");
  }
}

SvdResult svd(const Matrix& m) {
  require_square(m, "svd");
  require_finite(m, "svd");
  const Eigen::Index n = m.rows();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  Matrix a = m;
  Matrix v = Matrix::Identity(n, n);
  Vector sq(n);
  for (Eigen::Index j = 0; j < n; ++j) sq[j] = a.col(j).squaredNorm();

  bool converged = false;
  double worst_offdiag = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    worst_offdiag = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = sq[i];
        const double beta = sq[j];
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = dot(a.col(i).data(), a.col(j).data(), n);
        const double cosine = std::abs(gamma) / std::sqrt(alpha * beta);
        worst_offdiag = std::max(worst_offdiag, cosine);
        if (cosine <= n * eps) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(a.col(i).data(), a.col(j).data(), n, c, s);
        rotate(v.col(i).data(), v.col(j).data(), n, c, s);
        sq[i] = a.col(i).squaredNorm();
        sq[j] = a.col(j).squaredNorm();
      }
    }
  }
  if (!converged) {
    throw NumericalError("svd: no convergence after " + std::to_string(kMaxSweeps) +
                         " sweeps, worst column cosine " + std::to_string(worst_offdiag));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Vector norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms[j] = a.col(j).norm();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return norms[l] > norms[r]; });

  SvdResult out{Matrix(n, n), Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    out.s[k] = norms[j];
    out.v.col(k) = v.col(j);
    if (norms[j] > 0.0) {
      out.u.col(k) = a.col(j) / norms[j];
    } else {
      out.u.col(k).setZero();
    }
  }
  if (out.s[n - 1] == 0.0) complete_basis(out.u, out.s);
  return out;
}

Matrix mat_exp(const Matrix& m) {
  require_square(m, "mat_exp");
  require_finite(m, "mat_exp");
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();

  constexpr double theta3 = 1.495585217958292e-2;
  constexpr double theta5 = 2.539398330063230e-1;
  constexpr double theta7 = 9.504178996162932e-1;
  constexpr double theta9 = 2.097847961257068e0;
  constexpr double theta13 = 5.371920351148152e0;

  Matrix u;
  Matrix v;
  int squarings = 0;
  if (norm1 <= theta3) {
    pade_odd_even(m, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}, u, v);
  } else if (norm1 <= theta5) {
    pade_odd_even(m, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0},
                  u, v);
  } else if (norm1 <= theta7) {
    pade_odd_even(m,
                  std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                        25200.0, 1512.0, 56.0, 1.0},
                  u, v);
  } else if (norm1 <= theta9) {
    pade_odd_even(m,
                  std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                         302702400.0, 30270240.0, 2162160.0, 110880.0,
                                         3960.0, 90.0, 1.0},
                  u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
    if (squarings > 1024) {
      throw NumericalError("mat_exp: scaling failure, 1-norm " + std::to_string(norm1));
    }
    pade13(std::ldexp(1.0, -squarings) * m, u, v);
  }

  Eigen::PartialPivLU<Matrix> lu(v - u);
  Matrix r = lu.solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  if (!r.allFinite()) {
    throw NumericalError("mat_exp: overflow after " + std::to_string(squarings) +
                         " squarings (1-norm " + std::to_string(norm1) + ")");
  }
  return r;
}

double fro_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "fro_inner");
  return a.cwiseProduct(b).sum();
}

double fro_norm(const Matrix& a) { return a.norm(); }

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hadamard");
  return a.cwiseProduct(b);
}

}  // namespace biorth
