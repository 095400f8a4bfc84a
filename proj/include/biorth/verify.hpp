#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace biorth {

/// Outcome of one self-check suite: the worst measured error against its
/// tolerance.
struct SuiteResult {
  std::string name;
  double worst;
  double tolerance;
  bool passed;
  std::string detail;
};

struct CheckOptions {
  /// Multiplies every suite tolerance; 0 makes any non-zero error fail.
  double tol_scale = 1.0;
  std::uint64_t seed = 1;
  int trials = 20;
};

/// Names accepted by `run_suite`, in the order `run_all_suites` runs them.
const std::vector<std::string>& suite_names();

/// Throws ArgumentError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const CheckOptions& opts);
std::vector<SuiteResult> run_all_suites(const CheckOptions& opts);

}  // namespace biorth
