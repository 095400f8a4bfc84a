#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace biorth::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kSuccess = 0, kRuntimeError = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  long long n = 100;
  long long q = 64;
  long long k = 16;
  std::uint64_t seed = 1;
  double alpha = 100.0;
  double lambda = 0.0;
  std::string solver = "cg";
  /// Iteration cap; 500 for funmap and 100 for the other solvers when unset.
  std::optional<int> max_iters;
  double grad_tol = 1e-8;
  double noise = 0.0;
  /// Standard deviation of the model-problem targets is scale / sqrt(n).
  double scale = 5.0;
  bool synthetic = false;
  std::string out = "biorth";
  std::string suite;
  double tol = 1.0;
  int trials = 20;
  std::string x0, y0, phi, psi;
  std::string a, b, w;
};

/// Parses `args` (args[0] is the program name) and runs the command.
/// Summary lines go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_model_problem(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_penalty(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_funmap(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_project(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace biorth::cli
