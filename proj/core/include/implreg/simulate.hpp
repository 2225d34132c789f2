#pragma once

#include <cstdint>
#include <random>

#include "implreg/dataset.hpp"

namespace implreg {

struct SimulationConfig {
  std::size_t n = 50;
  /// Error standard deviation, shared by both axes.
  double sigma = 1.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for n == 0 or a negative/non-finite sigma.
  void validate() const;
};

/// Portable draw source: std::mt19937_64 (sequence fixed by the standard),
/// uniforms from the top 53 bits, normals by Box-Muller taking the cosine
/// branch first and the sine branch on the next call. Does not depend on the
/// implementation-defined std distributions, so a seed reproduces the same
/// stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// t ~ U(1, 10); x = 200/t + delta; y = 20 t + eps; delta, eps ~ N(0, sigma^2).
/// Draw order: all n values of t, then all delta, then all eps.
/// Negative coordinates are kept.
Dataset generate(const SimulationConfig& config);

}  // namespace implreg
