#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "radmul/types.hpp"

namespace radmul {

// Seeded generator whose output does not depend on the standard library's
// distribution implementations, so reports stay byte-identical across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  double normal() {
    // Box-Muller; u1 is kept away from zero.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  cplx complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }

  Mat complex_matrix(Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  Vec complex_vector(Eigen::Index n) { return complex_matrix(n, 1); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace radmul
