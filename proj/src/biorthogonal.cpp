#include "biorth/biorthogonal.hpp"

#include "biorth/errors.hpp"
#include "biorth/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

namespace biorth {

struct BiorthPoint::Cache {
  std::once_flag once;
  PointFactors factors;
};

BiorthPoint::BiorthPoint(Matrix x, Matrix y, std::optional<double> tol)
    : xy_{std::move(x), std::move(y)}, cache_(std::make_shared<Cache>()) {
  require_square_pair(xy_, "BiorthPoint");
  require_finite(xy_.x, "BiorthPoint x");
  require_finite(xy_.y, "BiorthPoint y");
  feas_err_ = product_defect(xy_.x, xy_.y);
  const double bound = tol.value_or(default_feas_tol(dim()));
  if (!(feas_err_ <= bound)) {
    throw InvalidPointError("BiorthPoint: ||XY - I||_F = " + std::to_string(feas_err_) +
                            " exceeds tolerance " + std::to_string(bound));
  }
}

BiorthPoint BiorthPoint::identity(Eigen::Index n) {
  return BiorthPoint(Matrix::Identity(n, n), Matrix::Identity(n, n), 0.0);
}

const PointFactors& BiorthPoint::factors() const {
  std::call_once(cache_->once, [this] {
    cache_->factors = PointFactors{svd(xy_.x), svd(xy_.y)};
  });
  return cache_->factors;
}

bool BiorthPoint::same_as(const BiorthPoint& other) const {
  if (cache_ == other.cache_) return true;
  return xy_.x.rows() == other.xy_.x.rows() && xy_.x == other.xy_.x &&
         xy_.y == other.xy_.y;
}

namespace {

double tangent_residual(const BiorthPoint& base, const Matrix& u, const Matrix& v) {
  return (base.x() * v + u * base.y()).norm();
}

void require_same_base(const BiorthPoint& a, const BiorthPoint& b, std::string_view what) {
  if (!a.same_as(b)) {
    throw InvalidTangentError(std::string(what) + ": tangent vectors at different base points");
  }
}

}  // namespace

TangentPair::TangentPair(BiorthPoint base, Matrix u, Matrix v, std::optional<double> tol)
    : base_(std::move(base)), uv_{std::move(u), std::move(v)} {
  require_same_shape(base_.x(), uv_.x, "TangentPair u");
  require_same_shape(base_.x(), uv_.y, "TangentPair v");
  require_finite(uv_.x, "TangentPair u");
  require_finite(uv_.y, "TangentPair v");
  const double res = residual();
  const double bound =
      tol.value_or(default_tan_tol(base_.dim())) * std::max(1.0, pair_norm(uv_));
  if (!(res <= bound)) {
    throw InvalidTangentError("TangentPair: ||X0 V + U Y0||_F = " + std::to_string(res) +
                              " exceeds tolerance " + std::to_string(bound));
  }
}

TangentPair::TangentPair(Unchecked, BiorthPoint base, MatrixPair uv)
    : base_(std::move(base)), uv_(std::move(uv)) {}

TangentPair TangentPair::zero(const BiorthPoint& base) {
  const Eigen::Index n = base.dim();
  return TangentPair(Unchecked{}, base, MatrixPair{Matrix::Zero(n, n), Matrix::Zero(n, n)});
}

double TangentPair::residual() const { return tangent_residual(base_, uv_.x, uv_.y); }

TangentPair operator+(const TangentPair& a, const TangentPair& b) {
  require_same_base(a.base_, b.base_, "tangent +");
  return TangentPair(TangentPair::Unchecked{}, a.base_, a.uv_ + b.uv_);
}

TangentPair operator-(const TangentPair& a, const TangentPair& b) {
  require_same_base(a.base_, b.base_, "tangent -");
  return TangentPair(TangentPair::Unchecked{}, a.base_, a.uv_ - b.uv_);
}

TangentPair operator*(double s, const TangentPair& t) {
  return TangentPair(TangentPair::Unchecked{}, t.base_, s * t.uv_);
}

TangentPair operator-(const TangentPair& t) { return -1.0 * t; }

MatrixPair pair_product(const MatrixPair& a, const MatrixPair& b) {
  require_square_pair(a, "pair_product");
  require_square_pair(b, "pair_product");
  require_same_shape(a.x, b.x, "pair_product");
  return MatrixPair{a.x * b.x, b.y * a.y};
}

BiorthPoint pair_product(const BiorthPoint& a, const BiorthPoint& b) {
  MatrixPair ab = pair_product(a.pair(), b.pair());
  return BiorthPoint(std::move(ab.x), std::move(ab.y));
}

BiorthPoint pair_inverse(const BiorthPoint& p) {
  // YX - I is a similarity transform of XY - I; the swap is valid whenever p is.
  return BiorthPoint(p.y(), p.x(), std::numeric_limits<double>::infinity());
}

MembershipResult is_on_manifold(const Matrix& x, const Matrix& y, double tol) {
  require_square(x, "is_on_manifold");
  require_same_shape(x, y, "is_on_manifold");
  const double err = product_defect(x, y);
  return {err <= tol, err};
}

TangentPair project_tangent(const BiorthPoint& p, const AmbientPair& a) {
  require_same_shape(p.x(), a.x, "project_tangent phi");
  require_same_shape(p.x(), a.y, "project_tangent psi");
  const Matrix& x0 = p.x();
  const Matrix& y0 = p.y();
  const PointFactors& f = p.factors();
  const Eigen::Index n = p.dim();

  const Matrix c = -(x0 * a.y) - a.x * y0;
  const Matrix c_hat = f.x.u.transpose() * c * f.y.v;

  Matrix x_hat(n, n);
  Matrix y_hat(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double beta = f.y.s[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      const double alpha = f.x.s[i];
      const double denom = alpha * alpha + beta * beta;
      if (!(denom >= 1e-300)) {
        throw SingularityError("project_tangent: alpha_i^2 + beta_j^2 = " +
                               std::to_string(denom));
      }
      x_hat(i, j) = c_hat(i, j) * beta / denom;
      y_hat(i, j) = c_hat(i, j) * alpha / denom;
    }
  }

  Matrix u = a.x + f.x.u * x_hat * f.y.u.transpose();
  Matrix v = a.y + f.x.v * y_hat * f.y.v.transpose();
  return TangentPair(p, std::move(u), std::move(v));
}

BiorthPoint retract(const BiorthPoint& p, const TangentPair& t) {
  if (!t.base().same_as(p)) {
    throw InvalidTangentError("retract: tangent is not based at the given point");
  }
  const Matrix w = p.y() * t.u();
  Matrix x = p.x() * mat_exp(w);
  Matrix y = mat_exp(-w) * p.y();
  return BiorthPoint(std::move(x), std::move(y));
}

double metric(const BiorthPoint& p, const TangentPair& a, const TangentPair& b) {
  require_same_base(p, a.base(), "metric");
  require_same_base(p, b.base(), "metric");
  return pair_inner(a.pair(), b.pair());
}

BiorthPoint random_point(std::uint64_t seed, Eigen::Index n, double scale) {
  if (n < 1) throw ArgumentError("random_point: n must be positive");
  if (!(scale >= 0.0)) throw ArgumentError("random_point: scale must be non-negative");
  Rng rng(seed);
  const Matrix g = scale * rng.gaussian_matrix(n, n);
  return BiorthPoint(mat_exp(g), mat_exp(-g));
}

TangentPair random_tangent(std::uint64_t seed, const BiorthPoint& p, double scale) {
  if (!(scale >= 0.0)) throw ArgumentError("random_tangent: scale must be non-negative");
  Rng rng(seed);
  const Eigen::Index n = p.dim();
  Matrix u = rng.gaussian_matrix(n, n);
  Matrix v = -(p.y() * u * p.y());
  const double norm = std::sqrt(u.squaredNorm() + v.squaredNorm());
  const double factor = norm > 0.0 ? scale / norm : 0.0;
  return TangentPair(p, factor * u, factor * v);
}

}  // namespace biorth
