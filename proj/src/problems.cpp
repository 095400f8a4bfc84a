#include "biorth/problems.hpp"

#include "biorth/errors.hpp"
#include "biorth/random.hpp"

#include <cmath>
#include <string>

namespace biorth {

namespace {

void require_pair_shape(const Matrix& ref_x, const Matrix& ref_y, const Matrix& x,
                        const Matrix& y, std::string_view what) {
  require_same_shape(ref_x, x, what);
  require_same_shape(ref_y, y, what);
}

Matrix product_residual(const Matrix& x, const Matrix& y) {
  Matrix r = x * y;
  r.diagonal().array() -= 1.0;
  return r;
}

}  // namespace

void validate(const NearestPairProblem& p) {
  require_square(p.phi, "nearest-pair phi");
  require_same_shape(p.phi, p.psi, "nearest-pair psi");
  require_finite(p.phi, "nearest-pair phi");
  require_finite(p.psi, "nearest-pair psi");
}

void validate(const PenaltyProblem& p) {
  validate(NearestPairProblem{p.phi, p.psi});
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw ArgumentError("penalty: alpha must be a positive finite number");
  }
}

void validate(const FunmapProblem& p) {
  if (p.a.rows() != p.b.rows() || p.a.cols() != p.b.cols()) {
    throw DimensionError("funmap: A is " + std::to_string(p.a.rows()) + "x" +
                         std::to_string(p.a.cols()) + " but B is " +
                         std::to_string(p.b.rows()) + "x" + std::to_string(p.b.cols()));
  }
  const Eigen::Index k = p.a.cols();
  if (k < 1 || p.a.rows() < k) {
    throw DimensionError("funmap: need q >= k >= 1, got q=" + std::to_string(p.a.rows()) +
                         " k=" + std::to_string(k));
  }
  if (p.w.rows() != k || p.w.cols() != k) {
    throw DimensionError("funmap: W must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  require_finite(p.a, "funmap A");
  require_finite(p.b, "funmap B");
  require_finite(p.w, "funmap W");
  if ((p.w.array() < 0.0).any()) throw ArgumentError("funmap: W must be non-negative");
  if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) {
    throw ArgumentError("funmap: lambda must be non-negative");
  }
}

CostGrad nearest_pair_cost_grad(const NearestPairProblem& p, const Matrix& x,
                                const Matrix& y) {
  require_pair_shape(p.phi, p.psi, x, y, "nearest_pair_cost_grad");
  const Matrix dx = x - p.phi;
  const Matrix dy = y - p.psi;
  return {dx.squaredNorm() + dy.squaredNorm(), AmbientPair{2.0 * dx, 2.0 * dy}};
}

CostGrad penalty_cost_grad(const PenaltyProblem& p, const Matrix& x, const Matrix& y) {
  require_pair_shape(p.phi, p.psi, x, y, "penalty_cost_grad");
  const Matrix dx = x - p.phi;
  const Matrix dy = y - p.psi;
  const Matrix r = product_residual(x, y);
  const double cost = dx.squaredNorm() + dy.squaredNorm() + p.alpha * r.squaredNorm();
  const double two_alpha = 2.0 * p.alpha;
  return {cost, AmbientPair{2.0 * dx + two_alpha * r * y.transpose(),
                            2.0 * dy + two_alpha * x.transpose() * r}};
}

CostGrad funmap_cost_grad(const FunmapProblem& p, const Matrix& c1, const Matrix& c2) {
  const Eigen::Index k = p.a.cols();
  if (c1.rows() != k || c1.cols() != k || c2.rows() != k || c2.cols() != k) {
    throw DimensionError("funmap_cost_grad: C1 and C2 must be " + std::to_string(k) + "x" +
                         std::to_string(k));
  }
  const Matrix fit1 = p.a * c1 - p.b;
  const Matrix fit2 = p.a - p.b * c2;
  const Matrix w2 = p.w.cwiseProduct(p.w);
  const double reg = c1.cwiseProduct(p.w).squaredNorm() + c2.cwiseProduct(p.w).squaredNorm();
  const double cost = fit1.squaredNorm() + fit2.squaredNorm() + p.lambda * reg;
  const double two_lambda = 2.0 * p.lambda;
  return {cost, AmbientPair{2.0 * p.a.transpose() * fit1 + two_lambda * c1.cwiseProduct(w2),
                            -2.0 * p.b.transpose() * fit2 + two_lambda * c2.cwiseProduct(w2)}};
}

Matrix funnel_weights(Eigen::Index k) {
  Matrix w(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      w(i, j) = static_cast<double>(std::abs(i - j)) / static_cast<double>(k);
    }
  }
  return w;
}

SyntheticFunmap synth_funmap(std::uint64_t seed, Eigen::Index q, Eigen::Index k, double noise,
                             double lambda) {
  if (k < 1 || q < k) {
    throw ArgumentError("synth_funmap: need q >= k >= 1, got q=" + std::to_string(q) +
                        " k=" + std::to_string(k));
  }
  if (!(noise >= 0.0)) throw ArgumentError("synth_funmap: noise must be non-negative");
  Rng rng(seed);
  const Matrix g = 0.3 * rng.gaussian_matrix(k, k);
  Matrix c_star = mat_exp(g);
  Matrix c_star_inv = mat_exp(-g);
  Matrix a = rng.gaussian_matrix(q, k);
  Matrix b = a * c_star;
  if (noise > 0.0) b += noise * rng.gaussian_matrix(q, k);
  FunmapProblem problem{std::move(a), std::move(b), funnel_weights(k), lambda};
  validate(problem);
  return {std::move(problem), BiorthPoint(std::move(c_star), std::move(c_star_inv))};
}

AmbientPair random_targets(std::uint64_t seed, Eigen::Index n, double scale) {
  if (n < 1) throw ArgumentError("random_targets: n must be positive");
  Rng rng(seed);
  const double sigma = scale / std::sqrt(static_cast<double>(n));
  Matrix phi = sigma * rng.gaussian_matrix(n, n);
  Matrix psi = sigma * rng.gaussian_matrix(n, n);
  return {std::move(phi), std::move(psi)};
}

NearestPairObjective::NearestPairObjective(NearestPairProblem p) : p_(std::move(p)) {
  validate(p_);
}

double NearestPairObjective::cost(const Matrix& x, const Matrix& y) const {
  require_pair_shape(p_.phi, p_.psi, x, y, "nearest-pair cost");
  return (x - p_.phi).squaredNorm() + (y - p_.psi).squaredNorm();
}

AmbientPair NearestPairObjective::euclidean_gradient(const Matrix& x, const Matrix& y) const {
  return nearest_pair_cost_grad(p_, x, y).grad;
}

CostGrad NearestPairObjective::evaluate(const Matrix& x, const Matrix& y) const {
  return nearest_pair_cost_grad(p_, x, y);
}

PenaltyObjective::PenaltyObjective(PenaltyProblem p) : p_(std::move(p)) { validate(p_); }

double PenaltyObjective::cost(const Matrix& x, const Matrix& y) const {
  require_pair_shape(p_.phi, p_.psi, x, y, "penalty cost");
  return (x - p_.phi).squaredNorm() + (y - p_.psi).squaredNorm() +
         p_.alpha * product_residual(x, y).squaredNorm();
}

AmbientPair PenaltyObjective::euclidean_gradient(const Matrix& x, const Matrix& y) const {
  return penalty_cost_grad(p_, x, y).grad;
}

CostGrad PenaltyObjective::evaluate(const Matrix& x, const Matrix& y) const {
  return penalty_cost_grad(p_, x, y);
}

FunmapObjective::FunmapObjective(FunmapProblem p) : p_(std::move(p)) { validate(p_); }

double FunmapObjective::cost(const Matrix& c1, const Matrix& c2) const {
  return funmap_cost_grad(p_, c1, c2).cost;
}

AmbientPair FunmapObjective::euclidean_gradient(const Matrix& c1, const Matrix& c2) const {
  return funmap_cost_grad(p_, c1, c2).grad;
}

CostGrad FunmapObjective::evaluate(const Matrix& c1, const Matrix& c2) const {
  return funmap_cost_grad(p_, c1, c2);
}

}  // namespace biorth
