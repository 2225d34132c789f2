#include "implreg/fitcore.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "implreg/error.hpp"

namespace implreg {

std::optional<double> FitResult::coefficient(Term term) const {
  if (const Coefficient* c = find(term)) return c->estimate;
  return std::nullopt;
}

const Coefficient* FitResult::find(Term term) const {
  for (const auto& c : coefficients) {
    if (c.term == term) return &c;
  }
  return nullptr;
}

namespace {

std::vector<Term> design_terms(const ModelSpec& spec) {
  std::vector<Term> terms;
  if (spec.intercept()) terms.push_back(Term::kOne);
  terms.insert(terms.end(), spec.predictors().begin(), spec.predictors().end());
  return terms;
}

Eigen::MatrixXd design_matrix(const std::vector<Term>& terms, const Dataset& data) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(terms.size()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const auto& r = data[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      X(i, j) = eval_term(terms[static_cast<std::size_t>(j)], r.x, r.y);
    }
  }
  return X;
}

double two_sided_p(double t, std::size_t dof) {
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(static_cast<double>(dof));
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

std::vector<double> response_values(const ModelSpec& spec, const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.size());
  for (const auto& r : data.rows()) out.push_back(eval_term(spec.response(), r.x, r.y));
  return out;
}

FitResult fit_ols(const ModelSpec& spec, const Dataset& data) {
  const std::vector<Term> terms = design_terms(spec);
  const std::size_t n = data.size();
  const std::size_t p = terms.size();
  if (n <= p) {
    throw InsufficientDataError("model '" + format_model(spec) + "' needs more than " +
                                std::to_string(p) + " observations, got " + std::to_string(n));
  }

  const Eigen::MatrixXd X = design_matrix(terms, data);
  const std::vector<double> response = response_values(spec, data);
  const Eigen::Map<const Eigen::VectorXd> b(response.data(), static_cast<Eigen::Index>(n));

  // Without pivoting |R(k,k)| is the norm of column k after projection onto
  // columns 0..k-1, which is exactly the rank criterion.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(static_cast<Eigen::Index>(p))
                                .triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < p; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double col_norm = X.col(kk).norm();
    if (col_norm == 0.0 || std::abs(R(kk, kk)) < kRankTolerance * col_norm) {
      std::string msg = "singular design: term '" + std::string(term_symbol(terms[k])) +
                        "' is collinear with";
      if (k == 0) {
        msg += " nothing (all-zero column)";
      } else {
        for (std::size_t j = 0; j < k; ++j) {
          msg += (j == 0 ? " '" : ", '") + std::string(term_symbol(terms[j])) + "'";
        }
      }
      throw SingularDesignError(msg);
    }
  }

  const Eigen::VectorXd qtb = (qr.householderQ().transpose() * b).head(static_cast<Eigen::Index>(p));
  const auto upper = R.triangularView<Eigen::Upper>();
  const Eigen::VectorXd beta = upper.solve(qtb);
  const Eigen::VectorXd fitted = X * beta;

  FitResult fit;
  fit.spec = spec;
  fit.n = n;
  fit.residual_dof = n - p;

  const double mean = b.mean();
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double e = b(ii) - fitted(ii);
    fit.sse += e * e;
    fit.ssm += (fitted(ii) - mean) * (fitted(ii) - mean);
    fit.sst_centered += (b(ii) - mean) * (b(ii) - mean);
    fit.sst_uncentered += b(ii) * b(ii);
  }

  const double sst = spec.intercept() ? fit.sst_centered : fit.sst_uncentered;
  if (sst > 0.0) {
    fit.r_squared = 1.0 - fit.sse / sst;
  } else {
    fit.r_squared = fit.sse == 0.0 ? 1.0 : 0.0;
  }

  // (X'X)^-1 = R^-1 R^-T
  const Eigen::MatrixXd r_inv =
      upper.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
  const Eigen::MatrixXd xtx_inv = r_inv * r_inv.transpose();
  const double sigma2 = fit.sse / static_cast<double>(fit.residual_dof);

  fit.coefficients.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    Coefficient c;
    c.term = terms[j];
    c.estimate = beta(jj);
    c.std_error = std::sqrt(sigma2 * xtx_inv(jj, jj));
    if (c.std_error > 0.0) {
      c.t_stat = c.estimate / c.std_error;
    } else {
      c.t_stat = c.estimate == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.estimate);
    }
    c.p_value = two_sided_p(c.t_stat, fit.residual_dof);
    fit.coefficients.push_back(c);
  }
  return fit;
}

std::vector<double> fitted_values(const FitResult& fit, const Dataset& data) {
  std::vector<double> out(data.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const auto& c : fit.coefficients) {
      out[i] += c.estimate * eval_term(c.term, data[i].x, data[i].y);
    }
  }
  return out;
}

double self_weighting_mean(std::span<const double> v) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : v) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum == 0.0) throw DegenerateError("self-weighting mean undefined: values sum to zero");
  return sum_sq / sum;
}

double constancy_index(std::span<const double> v) {
  if (v.empty()) throw DegenerateError("constancy index of an empty vector");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : v) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) throw DegenerateError("constancy index undefined: all values are zero");
  if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); })) return 1.0;
  return std::min(1.0, (sum * sum) / (static_cast<double>(v.size()) * sum_sq));
}

ReductionResult reduce_model_traced(const FitResult& fit, const Dataset& data, double alpha) {
  ReductionResult out{fit, {}};
  while (out.fit.spec.predictors().size() > 1) {
    const Coefficient* worst = nullptr;
    for (const auto& c : out.fit.coefficients) {
      if (c.term == Term::kOne && out.fit.spec.intercept()) continue;
      if (c.p_value > alpha && (worst == nullptr || c.p_value > worst->p_value)) worst = &c;
    }
    if (worst == nullptr) break;
    const EliminationStep step{worst->term, worst->p_value};
    const ModelSpec reduced = out.fit.spec.without(step.dropped);
    out.fit = fit_ols(reduced, data);
    out.steps.push_back(step);
  }
  return out;
}

FitResult reduce_model(const FitResult& fit, const Dataset& data, double alpha) {
  return reduce_model_traced(fit, data, alpha).fit;
}

}  // namespace implreg
