#pragma once

// Reference implementations used only by the tests. They avoid the library's
// own decompositions and Eigen's solvers.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const Eigen::MatrixXd& m) {
  Dense d(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

inline Eigen::MatrixXd from_dense(const Dense& d) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(d.size()),
                    d.empty() ? 0 : static_cast<Eigen::Index>(d[0].size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d[i].size(); ++j) m(i, j) = d[i][j];
  return m;
}

inline Eigen::MatrixXd matmul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      long double s = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  return c;
}

inline double element_sum_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  long double s = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += static_cast<long double>(a(i, j)) * b(i, j);
  return static_cast<double>(s);
}

// Gaussian elimination with partial pivoting on a square system.
inline std::vector<double> solve(Dense a, std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("oracle::solve: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// Minimum-norm z with [Y0^T (x) I | I (x) X0] z = vec(C), vec column-major.
// Returns the two n x n blocks of z.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> kronecker_min_norm(const Eigen::MatrixXd& x0,
                                                                       const Eigen::MatrixXd& y0,
                                                                       const Eigen::MatrixXd& c) {
  const std::size_t n = static_cast<std::size_t>(x0.rows());
  const std::size_t nn = n * n;
  Dense k(nn, std::vector<double>(2 * nn, 0.0));
  // (Y0^T (x) I)[(j,i),(l,m)] = Y0(l,j) delta(i,m); (I (x) X0)[(j,i),(l,m)] = delta(j,l) X0(i,m)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = j * n + i;
      for (std::size_t l = 0; l < n; ++l) k[row][l * n + i] = y0(l, j);
      for (std::size_t m = 0; m < n; ++m) k[row][nn + j * n + m] = x0(i, m);
    }
  Dense kkt(nn, std::vector<double>(nn, 0.0));
  for (std::size_t r = 0; r < nn; ++r)
    for (std::size_t s = 0; s < nn; ++s) {
      double acc = 0.0;
      for (std::size_t t = 0; t < 2 * nn; ++t) acc += k[r][t] * k[s][t];
      kkt[r][s] = acc;
    }
  std::vector<double> rhs(nn);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) rhs[j * n + i] = c(i, j);
  const std::vector<double> w = solve(kkt, rhs);
  Eigen::MatrixXd a(n, n), b(n, n);
  for (std::size_t t = 0; t < 2 * nn; ++t) {
    double z = 0.0;
    for (std::size_t r = 0; r < nn; ++r) z += k[r][t] * w[r];
    const std::size_t local = t % nn;
    (t < nn ? a : b)(local % n, local / n) = z;
  }
  return {a, b};
}

// Scaled Taylor series in long double, squared back up.
inline Eigen::MatrixXd taylor_exp(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  using L = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  L a = m.cast<long double>();
  int squarings = 0;
  long double norm = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) norm += std::abs(a(i, j));
  while (norm > 0.25L) {
    a /= 2;
    norm /= 2;
    ++squarings;
  }
  L sum = L::Identity(n, n);
  L term = L::Identity(n, n);
  for (int k = 1; k < 40; ++k) {
    term = term * a / static_cast<long double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum.cast<double>();
}

}  // namespace oracle
