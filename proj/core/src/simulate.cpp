#include "implreg/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace implreg {

void SimulationConfig::validate() const {
  if (n == 0) throw std::invalid_argument("simulation needs n >= 1");
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw std::invalid_argument("sigma must be finite and non-negative");
  }
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

Dataset generate(const SimulationConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::size_t n = config.n;

  std::vector<double> t(n);
  for (auto& v : t) v = rng.uniform(1.0, 10.0);
  std::vector<double> delta(n);
  for (auto& v : delta) v = rng.normal(0.0, config.sigma);
  std::vector<double> eps(n);
  for (auto& v : eps) v = rng.normal(0.0, config.sigma);

  std::vector<Observation> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = {200.0 / t[i] + delta[i], 20.0 * t[i] + eps[i]};
  }
  return Dataset("x", "y", std::move(rows));
}

}  // namespace implreg
