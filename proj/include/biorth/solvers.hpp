#pragma once

#include "biorth/biorthogonal.hpp"
#include "biorth/errors.hpp"
#include "biorth/manifold.hpp"
#include "biorth/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace biorth {

struct SolverOptions {
  int max_iters = 100;
  double grad_tol = 1e-8;
  double armijo_c1 = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  /// Forced steepest-descent restart period for CG; n^2 when unset.
  std::optional<int> cg_restart_every;
  double min_step = 1e-16;

  /// Throws ArgumentError when a field is out of range.
  void validate() const;
};

struct TraceRecord {
  int iter;
  double cost;
  double grad_norm;
  double feas_err;
  double elapsed_ms;
};

using Trace = std::vector<TraceRecord>;

enum class StopReason { GradientTolerance, MaxIterations, LineSearchFailure };

std::string to_string(StopReason r);

template <class Point>
struct SolverResult {
  Point point;
  Trace trace;
  StopReason reason;
};

template <Manifold M>
struct LineSearchResult {
  double step;
  typename M::Point point;
  double cost;
};

/// Projection of the Euclidean gradient onto the tangent space at p.
template <Manifold M>
typename M::Tangent riemannian_gradient(const Problem& problem, const M& manifold,
                                        const typename M::Point& p) {
  const MatrixPair& xy = manifold.coordinates(p);
  return manifold.project(p, problem.euclidean_gradient(xy.x, xy.y));
}

inline TangentPair riemannian_gradient(const Problem& problem, const BiorthPoint& p) {
  return riemannian_gradient(problem, BiorthogonalManifold{}, p);
}

template <Manifold M>
double evaluate_cost(const Problem& problem, const M& manifold, const typename M::Point& p) {
  const MatrixPair& xy = manifold.coordinates(p);
  return problem.cost(xy.x, xy.y);
}

/// Next trial step after rejecting `s`: the minimiser of the quadratic
/// through (0, cost0), slope at 0 and (s, cost_s), kept within
/// [min(0.1, factor) s, factor s]. Plain contraction when cost_s is not finite.
inline double backtrack(double s, double cost0, double slope, double cost_s, double factor) {
  const double hi = factor * s;
  if (!std::isfinite(cost_s)) return hi;
  const double curvature = cost_s - cost0 - slope * s;
  if (!(curvature > 0.0)) return hi;
  const double q = -slope * s * s / (2.0 * curvature);
  return std::clamp(q, std::min(0.1, factor) * s, hi);
}

/// Backtracking search along `dir` from trial step `trial`, accepting the
/// first s with f(R(p, s dir)) <= f(p) + c1 s <grad, dir>.
///
/// Throws ArgumentError unless <grad, dir> < 0 and LineSearchError once the
/// step would fall below `opts.min_step`. Trial points whose retraction
/// overflows or leaves the manifold are treated as rejected.
template <Manifold M>
LineSearchResult<M> armijo_search(const Problem& problem, const M& manifold,
                                  const typename M::Point& p, double cost0,
                                  const typename M::Tangent& grad,
                                  const typename M::Tangent& dir, const SolverOptions& opts,
                                  double trial) {
  const double slope = manifold.metric(p, grad, dir);
  if (!(slope < 0.0)) {
    throw ArgumentError("armijo_search: not a descent direction (slope " +
                        std::to_string(slope) + ")");
  }
  for (double s = trial; s >= opts.min_step;) {
    double c = INFINITY;
    try {
      auto candidate = manifold.retract(p, s * dir);
      c = evaluate_cost(problem, manifold, candidate);
      if (std::isfinite(c) && c <= cost0 + opts.armijo_c1 * s * slope) {
        return {s, std::move(candidate), c};
      }
    } catch (const NumericalError&) {
    } catch (const InvalidPointError&) {
    }
    s = backtrack(s, cost0, slope, c, opts.backtrack_factor);
  }
  throw LineSearchError("armijo_search: step fell below " + std::to_string(opts.min_step));
}

template <Manifold M>
LineSearchResult<M> armijo_search(const Problem& problem, const M& manifold,
                                  const typename M::Point& p, const typename M::Tangent& dir,
                                  const SolverOptions& opts) {
  opts.validate();
  const double cost0 = evaluate_cost(problem, manifold, p);
  const auto grad = riemannian_gradient(problem, manifold, p);
  return armijo_search(problem, manifold, p, cost0, grad, dir, opts, opts.initial_step);
}

namespace detail {

template <Manifold M>
void require_feasible_start(const M& manifold, const typename M::Point& p0) {
  if constexpr (std::is_same_v<typename M::Point, BiorthPoint>) {
    const double err = manifold.feasibility_error(p0);
    if (!(err <= default_feas_tol(p0.dim()))) {
      throw ArgumentError("solver: starting point is not on the manifold (||XY - I||_F = " +
                          std::to_string(err) + ")");
    }
  }
}

template <Manifold M>
SolverResult<typename M::Point> first_order(const Problem& problem, const M& manifold,
                                            typename M::Point p0, const SolverOptions& opts,
                                            bool conjugate) {
  using Clock = std::chrono::steady_clock;
  opts.validate();
  require_feasible_start(manifold, p0);
  const auto start = Clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };
  const Eigen::Index n = manifold.coordinates(p0).x.rows();
  const int restart_every = opts.cg_restart_every.value_or(static_cast<int>(n * n));

  auto p = std::move(p0);
  double cost = evaluate_cost(problem, manifold, p);
  auto grad = riemannian_gradient(problem, manifold, p);
  double grad_sq = manifold.metric(p, grad, grad);

  SolverResult<typename M::Point> result{p, {}, StopReason::MaxIterations};
  const auto record = [&](int iter) {
    result.trace.push_back(
        {iter, cost, std::sqrt(grad_sq), manifold.feasibility_error(p), elapsed_ms()});
  };
  record(0);

  auto dir = -grad;
  double trial = opts.initial_step;
  for (int k = 0; k < opts.max_iters; ++k) {
    if (std::sqrt(grad_sq) <= opts.grad_tol) {
      result.reason = StopReason::GradientTolerance;
      break;
    }
    std::optional<LineSearchResult<M>> ls;
    bool steepest = !conjugate || manifold.metric(p, grad, dir) >= 0.0;
    if (steepest) dir = -grad;
    try {
      ls = armijo_search(problem, manifold, p, cost, grad, dir, opts, trial);
    } catch (const LineSearchError&) {
      if (!steepest) {
        dir = -grad;
        try {
          ls = armijo_search(problem, manifold, p, cost, grad, dir, opts, opts.initial_step);
        } catch (const LineSearchError&) {
        }
      }
    }
    if (!ls) {
      result.reason = StopReason::LineSearchFailure;
      break;
    }

    auto next_grad = riemannian_gradient(problem, manifold, ls->point);
    const double next_grad_sq = manifold.metric(ls->point, next_grad, next_grad);
    if (conjugate) {
      const auto moved_grad = manifold.transport(ls->point, grad);
      const auto moved_dir = manifold.transport(ls->point, dir);
      double beta = 0.0;
      if ((k + 1) % restart_every != 0 && grad_sq > 0.0) {
        beta = std::max(0.0, manifold.metric(ls->point, next_grad, next_grad - moved_grad) /
                                 grad_sq);
      }
      dir = -next_grad + beta * moved_dir;
    } else {
      dir = -next_grad;
    }
    trial = std::clamp(2.0 * ls->step, opts.min_step, 4.0 * opts.initial_step);

    p = std::move(ls->point);
    cost = ls->cost;
    grad = std::move(next_grad);
    grad_sq = next_grad_sq;
    record(k + 1);
  }
  result.point = std::move(p);
  return result;
}

}  // namespace detail

/// Riemannian steepest descent with Armijo backtracking and a warm-started
/// trial step (twice the previously accepted one).
template <Manifold M>
SolverResult<typename M::Point> gradient_descent(const Problem& problem, const M& manifold,
                                                 typename M::Point p0,
                                                 const SolverOptions& opts = {}) {
  return detail::first_order(problem, manifold, std::move(p0), opts, false);
}

/// Nonlinear conjugate gradient with the Polak-Ribiere+ rule and
/// transport-by-projection. Falls back to steepest descent every
/// `cg_restart_every` iterations, whenever the conjugate direction is not a
/// descent direction, and when the line search fails along it.
template <Manifold M>
SolverResult<typename M::Point> conjugate_gradient(const Problem& problem, const M& manifold,
                                                   typename M::Point p0,
                                                   const SolverOptions& opts = {}) {
  return detail::first_order(problem, manifold, std::move(p0), opts, true);
}

struct GradientCheckReport {
  /// Worst |numeric - analytic| / max(|analytic|, |numeric|, ||grad||, 1e-12).
  double max_rel_error;
  /// Worst |numeric - analytic| / max(|analytic|, |numeric|, 1e-12).
  double max_pointwise_rel_error;
  double grad_norm;
  int directions;
};

/// Compares <grad f, t> with the central difference of f o R along `n_dirs`
/// seeded unit tangents t.
template <Manifold M>
GradientCheckReport fd_gradient_check(const Problem& problem, const M& manifold,
                                      const typename M::Point& p, int n_dirs, double h,
                                      std::uint64_t seed = 0) {
  if (!(h > 0.0)) throw ArgumentError("fd_gradient_check: h must be positive");
  const auto grad = riemannian_gradient(problem, manifold, p);
  const double grad_norm = std::sqrt(manifold.metric(p, grad, grad));
  GradientCheckReport report{0.0, 0.0, grad_norm, n_dirs};
  for (int i = 0; i < n_dirs; ++i) {
    const auto t = manifold.random_tangent(seed + static_cast<std::uint64_t>(i), p, 1.0);
    const double analytic = manifold.metric(p, grad, t);
    const double plus = evaluate_cost(problem, manifold, manifold.retract(p, h * t));
    const double minus = evaluate_cost(problem, manifold, manifold.retract(p, -h * t));
    const double numeric = (plus - minus) / (2.0 * h);
    const double gap = std::abs(numeric - analytic);
    const double local = std::max({std::abs(analytic), std::abs(numeric), 1e-12});
    report.max_pointwise_rel_error = std::max(report.max_pointwise_rel_error, gap / local);
    report.max_rel_error = std::max(report.max_rel_error, gap / std::max(local, grad_norm));
  }
  return report;
}

}  // namespace biorth
