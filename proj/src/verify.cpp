#include "biorth/verify.hpp"

#include "biorth/biorthogonal.hpp"
#include "biorth/errors.hpp"
#include "biorth/euclidean.hpp"
#include "biorth/problems.hpp"
#include "biorth/random.hpp"
#include "biorth/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace biorth {

namespace {

// Column-major vec of the minimum-norm correction (X~, Y~) solving
// X0 Y~ + X~ Y0 = C, through the normal equations of the Kronecker system.
MatrixPair kronecker_min_norm(const Matrix& x0, const Matrix& y0, const Matrix& c) {
  const Eigen::Index n = x0.rows();
  const Eigen::Index nn = n * n;
  Matrix k = Matrix::Zero(nn, 2 * nn);
  const Matrix y0t = y0.transpose();
  for (Eigen::Index bi = 0; bi < n; ++bi) {
    for (Eigen::Index bj = 0; bj < n; ++bj) {
      // Y0^T (x) I
      for (Eigen::Index d = 0; d < n; ++d) k(bi * n + d, bj * n + d) = y0t(bi, bj);
      // I (x) X0
      if (bi == bj) k.block(bi * n, nn + bj * n, n, n) = x0;
    }
  }
  const Vector rhs = c.reshaped();
  const Matrix normal = k * k.transpose();
  const Vector z = k.transpose() * normal.ldlt().solve(rhs);
  return {z.head(nn).reshaped(n, n), z.tail(nn).reshaped(n, n)};
}

struct Accumulator {
  double worst = 0.0;
  void add(double v) { worst = std::max(worst, std::isfinite(v) ? v : INFINITY); }
};

SuiteResult finish(std::string name, double worst, double tol, std::string detail) {
  return {std::move(name), worst, tol, worst <= tol, std::move(detail)};
}

double point_scale(Eigen::Index n) { return 0.5 / std::sqrt(static_cast<double>(n)); }

SuiteResult projection_oracle(const CheckOptions& o) {
  Accumulator acc;
  for (Eigen::Index n = 2; n <= 8; ++n) {
    for (int t = 0; t < o.trials; ++t) {
      const std::uint64_t seed = o.seed * 1000003u + static_cast<std::uint64_t>(n * 1000 + t);
      const BiorthPoint p = random_point(seed, n, point_scale(n));
      Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
      const AmbientPair a{rng.gaussian_matrix(n, n), rng.gaussian_matrix(n, n)};
      const TangentPair proj = project_tangent(p, a);
      const Matrix c = -(p.x() * a.y) - a.x * p.y();
      const MatrixPair ref = kronecker_min_norm(p.x(), p.y(), c);
      const MatrixPair got{proj.u() - a.x, proj.v() - a.y};
      acc.add(pair_norm(got - ref) / std::max(pair_norm(ref), 1e-300));
    }
  }
  return finish("projection-oracle", acc.worst, 1e-8 * o.tol_scale,
                "relative error vs Kronecker normal equations, n=2..8");
}

SuiteResult tangent(const CheckOptions& o) {
  Accumulator residual;
  Accumulator idempotence;
  Accumulator orthogonality;
  for (Eigen::Index n : {2, 5, 10, 20}) {
    for (int t = 0; t < o.trials; ++t) {
      const std::uint64_t seed = o.seed * 7919u + static_cast<std::uint64_t>(n * 1000 + t);
      const BiorthPoint p = random_point(seed, n, point_scale(n));
      Rng rng(seed + 17);
      const AmbientPair a{rng.gaussian_matrix(n, n), rng.gaussian_matrix(n, n)};
      const double scale = pair_norm(a);
      const TangentPair proj = project_tangent(p, a);
      residual.add(proj.residual() / static_cast<double>(n));
      const TangentPair again = project_tangent(p, proj.pair());
      idempotence.add(pair_norm(again.pair() - proj.pair()) / scale);
      const MatrixPair normal = a - proj.pair();
      for (int d = 0; d < 5; ++d) {
        const TangentPair dir = random_tangent(seed * 31 + d, p, 1.0);
        orthogonality.add(std::abs(pair_inner(normal, dir.pair())) / scale);
      }
    }
  }
  const double worst = std::max({residual.worst / 1e-10, idempotence.worst / 1e-10,
                                 orthogonality.worst / 1e-8});
  std::ostringstream detail;
  detail << "residual/n=" << residual.worst << " idempotence=" << idempotence.worst
         << " orthogonality=" << orthogonality.worst << " (reported as ratio to bound)";
  return finish("tangent", worst, 1.0 * o.tol_scale, detail.str());
}

SuiteResult retraction_order(const CheckOptions& o) {
  Accumulator deviation;
  Accumulator feasibility;
  for (int t = 0; t < o.trials; ++t) {
    const Eigen::Index n = 2 + t % 9;
    const std::uint64_t seed = o.seed * 104729u + static_cast<std::uint64_t>(t);
    const BiorthPoint p = random_point(seed, n, point_scale(n));
    const TangentPair dir = random_tangent(seed + 1, p, 1.0);
    const auto linearization_error = [&](double s) {
      const BiorthPoint r = retract(p, s * dir);
      return pair_norm(r.pair() - (p.pair() + s * dir.pair()));
    };
    const double s = 1e-2;
    deviation.add(std::abs(linearization_error(s) / linearization_error(s / 2) - 4.0));
    const TangentPair big = random_tangent(seed + 2, p, 5.0);
    feasibility.add(retract(p, big).feasibility_error() / static_cast<double>(n));
  }
  const double worst = std::max(deviation.worst / 0.5, feasibility.worst / 1e-11);
  std::ostringstream detail;
  detail << "|ratio-4|=" << deviation.worst << " feas/n=" << feasibility.worst
         << " (reported as ratio to bound)";
  return finish("retraction-order", worst, 1.0 * o.tol_scale, detail.str());
}

SuiteResult gradient_fd(const CheckOptions& o) {
  Accumulator acc;
  const BiorthogonalManifold bo;
  const EuclideanManifold flat;
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = o.seed * 15485863u + static_cast<std::uint64_t>(t);
    const Eigen::Index n = 10;
    const AmbientPair targets = random_targets(seed, n, 2.0);
    const NearestPairObjective nearest({targets.x, targets.y});
    const BiorthPoint p = random_point(seed + 1, n, point_scale(n));
    acc.add(fd_gradient_check(nearest, bo, p, 10, 1e-6, seed).max_rel_error);

    const PenaltyObjective penalty({targets.x, targets.y, 100.0});
    const MatrixPair q = flat.random_point(seed + 2, n, 0.1);
    acc.add(fd_gradient_check(penalty, flat, q, 10, 1e-6, seed).max_rel_error);

    const SyntheticFunmap fm = synth_funmap(seed, 64, 16, 0.1, 0.1);
    const FunmapObjective funmap(fm.problem);
    const BiorthPoint c = random_point(seed + 3, 16, point_scale(16));
    acc.add(fd_gradient_check(funmap, bo, c, 10, 1e-6, seed).max_rel_error);
  }
  return finish("gradient-fd", acc.worst, 1e-5 * o.tol_scale,
                "central differences along unit tangents, h=1e-6");
}

SuiteResult exp_identity(const CheckOptions& o) {
  Accumulator acc;
  int t = 0;
  for (Eigen::Index n : {2, 5, 10, 20, 50, 100}) {
    for (int k = 0; k < std::max(1, o.trials / 4); ++k, ++t) {
      const std::uint64_t seed = o.seed * 32452843u + static_cast<std::uint64_t>(t);
      Rng rng(seed);
      Matrix g = rng.gaussian_matrix(n, n);
      g *= 10.0 * rng.uniform() / g.norm();
      acc.add(product_defect(mat_exp(g), mat_exp(-g)) / static_cast<double>(n));
    }
  }
  return finish("exp-identity", acc.worst, 1e-11 * o.tol_scale,
                "||e^G e^-G - I||_F / n for ||G||_F <= 10, n <= 100");
}

SuiteResult lie_structure(const CheckOptions& o) {
  Accumulator acc;
  for (int t = 0; t < o.trials; ++t) {
    const Eigen::Index n = 2 + t % 19;
    const std::uint64_t seed = o.seed * 49979687u + static_cast<std::uint64_t>(t);
    const BiorthPoint a = random_point(seed, n, point_scale(n));
    const BiorthPoint b = random_point(seed + 1, n, point_scale(n));
    acc.add(pair_product(a, b).feasibility_error());
    const MatrixPair unit = pair_product(pair_inverse(a).pair(), a.pair());
    const Matrix ident = Matrix::Identity(n, n);
    acc.add(std::max((unit.x - ident).norm(), (unit.y - ident).norm()));
    const MatrixPair left = pair_product(BiorthPoint::identity(n).pair(), a.pair());
    acc.add(pair_norm(left - a.pair()));
  }
  return finish("lie-structure", acc.worst, 1e-10 * o.tol_scale,
                "closure, inverse and identity of the pair product");
}

using SuiteFn = std::function<SuiteResult(const CheckOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"projection-oracle", projection_oracle}, {"tangent", tangent},
      {"retraction-order", retraction_order},   {"gradient-fd", gradient_fd},
      {"exp-identity", exp_identity},           {"lie-structure", lie_structure},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"projection-oracle", "tangent",
                                                 "retraction-order",  "gradient-fd",
                                                 "exp-identity",      "lie-structure"};
  return names;
}

SuiteResult run_suite(const std::string& name, const CheckOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ArgumentError("unknown suite '" + name + "'");
  if (opts.trials < 1) throw ArgumentError("check: trials must be positive");
  if (!(opts.tol_scale >= 0.0)) throw ArgumentError("check: tolerance scale must be >= 0");
  try {
    return it->second(opts);
  } catch (const Error& e) {
    return {name, INFINITY, 0.0, false, std::string("error: ") + e.what()};
  }
}

std::vector<SuiteResult> run_all_suites(const CheckOptions& opts) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, opts));
  return out;
}

}  // namespace biorth
