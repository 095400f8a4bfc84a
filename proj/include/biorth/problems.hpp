#pragma once

#include "biorth/biorthogonal.hpp"
#include "biorth/manifold.hpp"

#include <cstdint>

namespace biorth {

struct CostGrad {
  double cost;
  AmbientPair grad;
};

/// A smooth cost over matrix pairs together with its Euclidean gradient.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual double cost(const Matrix& x, const Matrix& y) const = 0;
  virtual AmbientPair euclidean_gradient(const Matrix& x, const Matrix& y) const = 0;
  virtual CostGrad evaluate(const Matrix& x, const Matrix& y) const {
    return {cost(x, y), euclidean_gradient(x, y)};
  }
};

/// ||X - Phi||^2 + ||Y - Psi||^2, minimised over BO(n) in the model experiment.
struct NearestPairProblem {
  Matrix phi;
  Matrix psi;
};

/// Nearest-pair cost plus alpha ||XY - I||^2, minimised over M(n) x M(n).
struct PenaltyProblem {
  Matrix phi;
  Matrix psi;
  double alpha;
};

/// ||A C1 - B||^2 + ||A - B C2||^2 + lambda (||C1 . W||^2 + ||C2 . W||^2)
/// for q x k coefficient matrices A, B and a k x k non-negative weight W.
struct FunmapProblem {
  Matrix a;
  Matrix b;
  Matrix w;
  double lambda;
};

CostGrad nearest_pair_cost_grad(const NearestPairProblem& p, const Matrix& x, const Matrix& y);
CostGrad penalty_cost_grad(const PenaltyProblem& p, const Matrix& x, const Matrix& y);
CostGrad funmap_cost_grad(const FunmapProblem& p, const Matrix& c1, const Matrix& c2);

/// Shape checks shared by the problem wrappers and the CLI loaders.
void validate(const NearestPairProblem& p);
void validate(const PenaltyProblem& p);
void validate(const FunmapProblem& p);

/// Default funnel weights W_ij = |i - j| / k.
Matrix funnel_weights(Eigen::Index k);

struct SyntheticFunmap {
  FunmapProblem problem;
  BiorthPoint groundtruth;
};

/// Synthetic functional-map instance: C* = e^{0.3 G}, A Gaussian q x k and
/// B = A C* + noise N. Draw order from one stream: G, A, N.
SyntheticFunmap synth_funmap(std::uint64_t seed, Eigen::Index q, Eigen::Index k, double noise,
                             double lambda = 0.0);

/// Seeded Gaussian targets (Phi, Psi) with entries N(0, scale^2 / n).
AmbientPair random_targets(std::uint64_t seed, Eigen::Index n, double scale);

class NearestPairObjective final : public Problem {
 public:
  explicit NearestPairObjective(NearestPairProblem p);
  double cost(const Matrix& x, const Matrix& y) const override;
  AmbientPair euclidean_gradient(const Matrix& x, const Matrix& y) const override;
  CostGrad evaluate(const Matrix& x, const Matrix& y) const override;
  const NearestPairProblem& data() const { return p_; }

 private:
  NearestPairProblem p_;
};

class PenaltyObjective final : public Problem {
 public:
  explicit PenaltyObjective(PenaltyProblem p);
  double cost(const Matrix& x, const Matrix& y) const override;
  AmbientPair euclidean_gradient(const Matrix& x, const Matrix& y) const override;
  CostGrad evaluate(const Matrix& x, const Matrix& y) const override;
  const PenaltyProblem& data() const { return p_; }

 private:
  PenaltyProblem p_;
};

class FunmapObjective final : public Problem {
 public:
  explicit FunmapObjective(FunmapProblem p);
  double cost(const Matrix& c1, const Matrix& c2) const override;
  AmbientPair euclidean_gradient(const Matrix& c1, const Matrix& c2) const override;
  CostGrad evaluate(const Matrix& c1, const Matrix& c2) const override;
  const FunmapProblem& data() const { return p_; }

 private:
  FunmapProblem p_;
};

}  // namespace biorth
