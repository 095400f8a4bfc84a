#pragma once

#include "biorth/linalg.hpp"

#include <cstdint>
#include <random>

namespace biorth {

/// Seeded generator with a fixed algorithm on every platform: 64-bit Mersenne
/// Twister for bits, 53-bit uniforms, Marsaglia polar method for normals.
/// Standard-library distributions are avoided because their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double gaussian();
  /// rows x cols matrix of independent standard normals, filled row by row.
  Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace biorth
