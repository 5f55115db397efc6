// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace renorm {

// Deterministic random source. std::mt19937_64 has a fully specified stream,
// and the mapping to doubles below avoids std::uniform_real_distribution,
// whose output is implementation-defined. Same seed, same numbers, anywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [-1, 1).
  double symmetric() { return uniform(-1.0, 1.0); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t integer(std::uint64_t bound) { return engine_() % bound; }

  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = symmetric();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace renorm
