#include "cli.hpp"

#include "biorth/biorthogonal.hpp"
#include "biorth/errors.hpp"
#include "biorth/euclidean.hpp"
#include "biorth/matrix_io.hpp"
#include "biorth/problems.hpp"
#include "biorth/solvers.hpp"
#include "biorth/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace biorth::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scale of the random start for the functional-map solve: C = e^{s G}.
constexpr double kFunmapStartScale = 0.05;

void add_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "matrix order for model-problem/penalty");
  sub->add_option("--q", cfg.q, "number of corresponding functions (funmap)");
  sub->add_option("--k", cfg.k, "basis size (funmap)");
  sub->add_option("--seed", cfg.seed, "PRNG seed");
  sub->add_option("--alpha", cfg.alpha, "penalty weight");
  sub->add_option("--lambda", cfg.lambda, "funnel regulariser weight");
  sub->add_option("--solver", cfg.solver, "gd or cg")->check(CLI::IsMember({"gd", "cg"}));
  sub->add_option("--max-iters", cfg.max_iters, "iteration cap (default 100, funmap 500)");
  sub->add_option("--grad-tol", cfg.grad_tol, "gradient-norm stopping tolerance");
  sub->add_option("--noise", cfg.noise, "synthetic funmap noise level");
  sub->add_option("--scale", cfg.scale, "model-problem target scale");
  sub->add_flag("--synthetic", cfg.synthetic, "generate a synthetic funmap instance");
  sub->add_option("--out", cfg.out, "output path prefix");
  sub->add_option("--suite", cfg.suite, "run a single check suite");
  sub->add_option("--tol", cfg.tol, "check tolerance multiplier");
  sub->add_option("--trials", cfg.trials, "check trials per suite");
  sub->add_option("--x0", cfg.x0, "base point X0 (project)");
  sub->add_option("--y0", cfg.y0, "base point Y0 (project)");
  sub->add_option("--phi", cfg.phi, "ambient Phi (project)");
  sub->add_option("--psi", cfg.psi, "ambient Psi (project)");
  sub->add_option("--a", cfg.a, "funmap A matrix file");
  sub->add_option("--b", cfg.b, "funmap B matrix file");
  sub->add_option("--w", cfg.w, "funmap W matrix file (default |i-j|/k)");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void validate_solver_flags(const RunConfig& cfg) {
  require(cfg.max_iters.value_or(0) >= 0, "--max-iters must be non-negative");
  require(cfg.grad_tol >= 0.0, "--grad-tol must be non-negative");
  require(cfg.solver == "gd" || cfg.solver == "cg", "--solver must be gd or cg");
}

constexpr int kFunmapMaxIters = 500;

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.max_iters = cfg.max_iters.value_or(cfg.command == "funmap" ? kFunmapMaxIters : opts.max_iters);
  opts.grad_tol = cfg.grad_tol;
  return opts;
}

template <Manifold M>
SolverResult<typename M::Point> solve(const RunConfig& cfg, const Problem& problem,
                                      const M& manifold, typename M::Point p0) {
  const SolverOptions opts = solver_options(cfg);
  if (cfg.solver == "gd") return gradient_descent(problem, manifold, std::move(p0), opts);
  return conjugate_gradient(problem, manifold, std::move(p0), opts);
}

void print_summary(std::ostream& out, const Trace& trace, StopReason reason) {
  const TraceRecord& last = trace.back();
  out << "final_cost=" << format_real(last.cost) << " feas_err=" << format_real(last.feas_err)
      << " iters=" << last.iter << " seconds=" << format_real(last.elapsed_ms / 1000.0) << "\n";
  out << "stop_reason=" << to_string(reason) << "\n";
}

std::string path_for(const RunConfig& cfg, const std::string& suffix) {
  return cfg.out + "." + suffix;
}

}  // namespace

int cmd_model_problem(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(cfg.n >= 1, "--n must be a positive integer");
  require(cfg.scale >= 0.0, "--scale must be non-negative");
  validate_solver_flags(cfg);
  const AmbientPair targets = random_targets(cfg.seed, cfg.n, cfg.scale);
  const NearestPairObjective problem({targets.x, targets.y});
  const auto result = solve(cfg, problem, BiorthogonalManifold{}, BiorthPoint::identity(cfg.n));
  write_trace(path_for(cfg, "trace.csv"), result.trace);
  write_matrix(path_for(cfg, "X.txt"), result.point.x());
  write_matrix(path_for(cfg, "Y.txt"), result.point.y());
  print_summary(out, result.trace, result.reason);
  return kSuccess;
}

int cmd_penalty(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(cfg.n >= 1, "--n must be a positive integer");
  require(cfg.scale >= 0.0, "--scale must be non-negative");
  require(cfg.alpha > 0.0 && std::isfinite(cfg.alpha), "--alpha must be positive");
  validate_solver_flags(cfg);
  const AmbientPair targets = random_targets(cfg.seed, cfg.n, cfg.scale);
  const PenaltyObjective problem({targets.x, targets.y, cfg.alpha});
  const Matrix ident = Matrix::Identity(cfg.n, cfg.n);
  const auto result = solve(cfg, problem, EuclideanManifold{}, MatrixPair{ident, ident});
  write_trace(path_for(cfg, "trace.csv"), result.trace);
  write_matrix(path_for(cfg, "X.txt"), result.point.x);
  write_matrix(path_for(cfg, "Y.txt"), result.point.y);
  print_summary(out, result.trace, result.reason);
  return kSuccess;
}

int cmd_funmap(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  validate_solver_flags(cfg);
  require(cfg.lambda >= 0.0, "--lambda must be non-negative");
  std::optional<BiorthPoint> truth;
  FunmapProblem data;
  if (cfg.synthetic) {
    require(cfg.k >= 1, "--k must be a positive integer");
    require(cfg.q >= cfg.k, "--q must be at least --k");
    require(cfg.noise >= 0.0, "--noise must be non-negative");
    SyntheticFunmap s = synth_funmap(cfg.seed, cfg.q, cfg.k, cfg.noise, cfg.lambda);
    data = std::move(s.problem);
    truth = std::move(s.groundtruth);
  } else {
    require(!cfg.a.empty() && !cfg.b.empty(), "funmap needs --synthetic or both --a and --b");
    data.a = read_matrix(cfg.a);
    data.b = read_matrix(cfg.b);
    data.w = cfg.w.empty() ? funnel_weights(data.a.cols()) : read_matrix(cfg.w);
    data.lambda = cfg.lambda;
  }
  const FunmapObjective problem(std::move(data));
  const Eigen::Index k = problem.data().a.cols();
  const BiorthPoint start = random_point(cfg.seed + 1, k, kFunmapStartScale);
  const auto result = solve(cfg, problem, BiorthogonalManifold{}, start);
  write_trace(path_for(cfg, "trace.csv"), result.trace);
  write_matrix(path_for(cfg, "C1.txt"), result.point.x());
  write_matrix(path_for(cfg, "C2.txt"), result.point.y());
  print_summary(out, result.trace, result.reason);
  if (truth) {
    const double e1 = (result.point.x() - truth->x()).norm();
    const double e2 = (result.point.y() - truth->y()).norm();
    const std::string line =
        "recovery_c1=" + format_real(e1) + " recovery_c2=" + format_real(e2) + "\n";
    out << line;
    std::ofstream rec(path_for(cfg, "recovery.txt"));
    rec << line;
    if (!rec) throw IoError("cannot write " + path_for(cfg, "recovery.txt"));
  }
  return kSuccess;
}

int cmd_project(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(!cfg.x0.empty() && !cfg.y0.empty() && !cfg.phi.empty() && !cfg.psi.empty(),
          "project needs --x0 --y0 --phi --psi");
  Matrix x0 = read_matrix(cfg.x0);
  Matrix y0 = read_matrix(cfg.y0);
  const AmbientPair a{read_matrix(cfg.phi), read_matrix(cfg.psi)};
  const BiorthPoint p(std::move(x0), std::move(y0));
  const TangentPair t = project_tangent(p, a);
  write_matrix(path_for(cfg, "X.txt"), t.u());
  write_matrix(path_for(cfg, "Y.txt"), t.v());
  out << "tangent_residual=" << format_real(t.residual()) << "\n";
  return kSuccess;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(cfg.tol >= 0.0, "--tol must be non-negative");
  require(cfg.trials >= 1, "--trials must be positive");
  CheckOptions opts;
  opts.tol_scale = cfg.tol;
  opts.seed = cfg.seed;
  opts.trials = cfg.trials;
  std::vector<SuiteResult> results;
  if (cfg.suite.empty()) {
    results = run_all_suites(opts);
  } else {
    const auto& names = suite_names();
    require(std::find(names.begin(), names.end(), cfg.suite) != names.end(),
            "unknown --suite '" + cfg.suite + "'");
    results.push_back(run_suite(cfg.suite, opts));
  }
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << format_real(r.worst)
        << " tol=" << format_real(r.tolerance) << "  " << r.detail << "\n";
    all = all && r.passed;
  }
  return all ? kSuccess : kRuntimeError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimisation on the biorthogonal manifold BO(n) = {(X, Y): XY = I}", "biorth"};
  app.require_subcommand(1);
  RunConfig cfg;
  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&, std::ostream&);
  };
  const Entry entries[] = {
      {"model-problem", "nearest pair min ||X-Phi||^2+||Y-Psi||^2 on BO(n)", cmd_model_problem},
      {"penalty", "penalty relaxation of the model problem on M(n)xM(n)", cmd_penalty},
      {"funmap", "bidirectional functional maps on BO(k)", cmd_funmap},
      {"project", "project (Phi, Psi) onto the tangent space at (X0, Y0)", cmd_project},
      {"check", "run the built-in invariant suites", cmd_check},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_options(sub, cfg);
    subs.emplace_back(sub, &e);
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  for (const auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = entry->name;
    try {
      return entry->fn(cfg, out, err);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n" << sub->help();
      return kUsageError;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kRuntimeError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kRuntimeError;
    }
  }
  return kUsageError;
}

}  // namespace biorth::cli
