#pragma once

#include <array>
#include <optional>
#include <vector>

#include "implreg/dataset.hpp"
#include "implreg/fitcore.hpp"

namespace implreg {

/// A fitted model rewritten as sum_k g_k * term_k(x, y) = 0, indexed by Term.
/// Response terms carry +1, estimated terms carry -estimate.
struct ImplicitEquation {
  std::array<double, 6> weight{};
  std::array<bool, 6> present{};

  static ImplicitEquation from_fit(const FitResult& fit);
  double g(Term t) const { return weight[static_cast<std::size_t>(t)]; }
  bool has(Term t) const { return present[static_cast<std::size_t>(t)]; }
};

/// Relative size below which a denominator (or leading coefficient) is
/// treated as zero.
inline constexpr double kSingularTolerance = 1e-12;

/// Outcome of solving the fitted equation for x at one observed y.
struct XSolve {
  std::optional<double> value;
  /// The quadratic had complex roots and the real part was used.
  bool real_part = false;
};

/// Solves the fitted equation for y at `x`. nullopt on a singular denominator.
std::optional<double> solve_for_y(const ImplicitEquation& eq, double x);

/// Solves the fitted equation for x at `y`. Quadratics take the root nearest
/// `x_observed` (smaller root on a tie) or the real part -B/(2A) when the
/// discriminant is negative; a vanishing leading coefficient falls back to
/// the linear solve.
XSolve solve_for_x(const ImplicitEquation& eq, double y, double x_observed);

/// Throws UnsupportedModelError unless the fitted equation can be solved in
/// closed form for both coordinates.
void check_invertible(const ModelSpec& spec);

struct Prediction {
  std::vector<std::optional<double>> y_hat;
  std::vector<std::optional<double>> x_hat;
  std::size_t undefined_count_y = 0;
  std::size_t undefined_count_x = 0;
  /// Observations whose x-hat is the real part of a complex root pair.
  std::vector<std::size_t> x_real_part;
};

std::vector<std::optional<double>> predict_y(const FitResult& fit, const Dataset& data);
/// Throws DegenerateError if no observation yields a defined x-hat.
std::vector<std::optional<double>> predict_x(const FitResult& fit, const Dataset& data,
                                             std::vector<std::size_t>* real_part = nullptr);

/// Both directions plus undefined counts.
Prediction predict(const FitResult& fit, const Dataset& data);

}  // namespace implreg
