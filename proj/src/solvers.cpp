#include "biorth/solvers.hpp"

namespace biorth {

void SolverOptions::validate() const {
  if (max_iters < 0) throw ArgumentError("max_iters must be non-negative");
  if (!(grad_tol >= 0.0)) throw ArgumentError("grad_tol must be non-negative");
  if (!(armijo_c1 > 0.0 && armijo_c1 < 1.0)) throw ArgumentError("armijo_c1 must lie in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw ArgumentError("backtrack_factor must lie in (0, 1)");
  }
  if (!(initial_step > 0.0)) throw ArgumentError("initial_step must be positive");
  if (!(min_step > 0.0 && min_step <= initial_step)) {
    throw ArgumentError("min_step must lie in (0, initial_step]");
  }
  if (cg_restart_every && *cg_restart_every < 1) {
    throw ArgumentError("cg_restart_every must be positive");
  }
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::GradientTolerance:
      return "gradient-tolerance";
    case StopReason::MaxIterations:
      return "max-iterations";
    case StopReason::LineSearchFailure:
      return "line-search-failure";
  }
  return "unknown";
}

}  // namespace biorth
