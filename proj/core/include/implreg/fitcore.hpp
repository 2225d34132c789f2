#pragma once

#include <optional>
#include <span>
#include <vector>

#include "implreg/dataset.hpp"
#include "implreg/formula.hpp"

namespace implreg {

struct Coefficient {
  /// Term::kOne marks the intercept.
  Term term = Term::kOne;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
};

/// One fitted model. Sums of squares are in the units of the response.
struct FitResult {
  ModelSpec spec = ModelSpec::make(Term::kY, {}, true);
  std::size_t n = 0;
  /// Intercept first (if any), then predictors in spec order.
  std::vector<Coefficient> coefficients;
  double sse = 0.0;
  double ssm = 0.0;
  double sst_centered = 0.0;
  double sst_uncentered = 0.0;
  double r_squared = 0.0;
  std::size_t residual_dof = 0;

  /// Estimate for `term`, or nullopt if the model does not estimate it.
  std::optional<double> coefficient(Term term) const;
  const Coefficient* find(Term term) const;
  double sigma_squared() const { return sse / static_cast<double>(residual_dof); }
};

/// Column is collinear when its residual after projection onto the earlier
/// columns falls below this fraction of its own norm.
inline constexpr double kRankTolerance = 1e-10;

/// Ordinary least squares of the response term on the predictors.
///
/// The non-response form regresses the constant 1 without intercept, which
/// minimizes relative error. Solved by Householder QR; standard errors from
/// sigma^2 (X'X)^-1 with sigma^2 = sse / (n - p); two-sided t p-values.
///
/// Throws InsufficientDataError if n <= p, SingularDesignError naming the
/// collinear term on rank deficiency, DomainError for 1/x at x == 0.
FitResult fit_ols(const ModelSpec& spec, const Dataset& data);

/// Response values of `spec` evaluated at each observation.
std::vector<double> response_values(const ModelSpec& spec, const Dataset& data);
/// Fitted response values (design matrix times the estimates).
std::vector<double> fitted_values(const FitResult& fit, const Dataset& data);

/// Sum(v^2) / Sum(v): the reciprocal of the no-intercept coefficient of
/// `1 ~ v`. Throws DegenerateError when Sum(v) == 0.
double self_weighting_mean(std::span<const double> v);

/// (Sum v)^2 / (n Sum v^2) = 1 / (1 + CV^2) with uncentered moments; equal
/// to the R^2 of the no-intercept fit `1 ~ v`. 1 iff v is a nonzero constant.
/// Throws DegenerateError for empty or all-zero v.
double constancy_index(std::span<const double> v);

struct EliminationStep {
  Term dropped;
  double p_value;
};

struct ReductionResult {
  FitResult fit;
  std::vector<EliminationStep> steps;
};

/// Backward elimination: drop the non-intercept predictor with the largest
/// p-value above `alpha`, refit, repeat. Stops when every remaining p-value
/// is <= alpha or a single predictor is left. The intercept stays.
ReductionResult reduce_model_traced(const FitResult& fit, const Dataset& data,
                                    double alpha = 0.05);
FitResult reduce_model(const FitResult& fit, const Dataset& data, double alpha = 0.05);

}  // namespace implreg
