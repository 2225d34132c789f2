#include "implreg/implicit.hpp"

#include <cmath>

#include "implreg/error.hpp"

namespace implreg {

namespace {

constexpr std::size_t idx(Term t) { return static_cast<std::size_t>(t); }

bool negligible(double value, double scale) {
  return value == 0.0 || std::abs(value) <= kSingularTolerance * scale;
}

std::optional<double> solve_linear(double slope, double slope_scale, double constant) {
  if (negligible(slope, slope_scale)) return std::nullopt;
  return -constant / slope;
}

}  // namespace

ImplicitEquation ImplicitEquation::from_fit(const FitResult& fit) {
  ImplicitEquation eq;
  const Term response = fit.spec.response();
  eq.weight[idx(response)] += 1.0;
  eq.present[idx(response)] = true;
  for (const auto& c : fit.coefficients) {
    eq.weight[idx(c.term)] -= c.estimate;
    eq.present[idx(c.term)] = true;
  }
  return eq;
}

void check_invertible(const ModelSpec& spec) {
  const std::string name = format_model(spec);
  if (!spec.uses(Term::kY) && !spec.uses(Term::kXY)) {
    throw UnsupportedModelError("model '" + name + "' does not involve y");
  }
  const bool has_x = spec.uses(Term::kX) || spec.uses(Term::kXY) ||
                     spec.uses(Term::kXSquared) || spec.uses(Term::kInvX);
  if (!has_x) throw UnsupportedModelError("model '" + name + "' does not involve x");
  if (spec.uses(Term::kXSquared) && spec.uses(Term::kInvX)) {
    throw UnsupportedModelError("model '" + name + "' is cubic in x");
  }
}

std::optional<double> solve_for_y(const ImplicitEquation& eq, double x) {
  if (eq.has(Term::kInvX) && x == 0.0) return std::nullopt;
  // P(x) + Q(x) y = 0
  const double q_y = eq.g(Term::kY);
  const double q_xy = eq.g(Term::kXY) * x;
  double p = eq.g(Term::kOne) + eq.g(Term::kX) * x + eq.g(Term::kXSquared) * x * x;
  if (eq.has(Term::kInvX)) p += eq.g(Term::kInvX) / x;
  return solve_linear(q_y + q_xy, std::abs(q_y) + std::abs(q_xy), p);
}

XSolve solve_for_x(const ImplicitEquation& eq, double y, double x_observed) {
  // g_inv/x + c + b x + a x^2 = 0
  const double c = eq.g(Term::kOne) + eq.g(Term::kY) * y;
  const double c_scale = std::abs(eq.g(Term::kOne)) + std::abs(eq.g(Term::kY) * y);
  const double b = eq.g(Term::kX) + eq.g(Term::kXY) * y;
  const double b_scale = std::abs(eq.g(Term::kX)) + std::abs(eq.g(Term::kXY) * y);
  const double a = eq.g(Term::kXSquared);

  double qa = a;
  double qb = b;
  double qc = c;
  double qb_scale = b_scale;
  if (eq.has(Term::kInvX)) {
    // multiply through by x: b x^2 + c x + g_inv = 0
    qa = b;
    qb = c;
    qc = eq.g(Term::kInvX);
    qb_scale = c_scale;
  } else if (!eq.has(Term::kXSquared)) {
    return {solve_linear(b, b_scale, c), false};
  }

  const double s = std::max(1.0, std::abs(x_observed));
  if (negligible(qa * s * s, std::abs(qb) * s + std::abs(qc))) {
    return {solve_linear(qb, qb_scale, qc), false};
  }

  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return {-qb / (2.0 * qa), true};

  // Stable pair: q = -(b + sign(b) sqrt(disc)) / 2, roots q/a and c/q.
  const double root = std::sqrt(disc);
  const double q = -0.5 * (qb + std::copysign(root, qb));
  double r1 = q / qa;
  double r2 = q != 0.0 ? qc / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  const double d1 = std::abs(r1 - x_observed);
  const double d2 = std::abs(r2 - x_observed);
  return {d2 < d1 ? r2 : r1, false};
}

std::vector<std::optional<double>> predict_y(const FitResult& fit, const Dataset& data) {
  check_invertible(fit.spec);
  const ImplicitEquation eq = ImplicitEquation::from_fit(fit);
  std::vector<std::optional<double>> out;
  out.reserve(data.size());
  for (const auto& r : data.rows()) out.push_back(solve_for_y(eq, r.x));
  return out;
}

std::vector<std::optional<double>> predict_x(const FitResult& fit, const Dataset& data,
                                             std::vector<std::size_t>* real_part) {
  check_invertible(fit.spec);
  const ImplicitEquation eq = ImplicitEquation::from_fit(fit);
  std::vector<std::optional<double>> out;
  out.reserve(data.size());
  bool any = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const XSolve s = solve_for_x(eq, data[i].y, data[i].x);
    if (s.real_part && real_part != nullptr) real_part->push_back(i);
    any = any || s.value.has_value();
    out.push_back(s.value);
  }
  if (!any && !data.empty()) {
    throw DegenerateError("model '" + format_model(fit.spec) + "' is singular for every observation");
  }
  return out;
}

Prediction predict(const FitResult& fit, const Dataset& data) {
  Prediction p;
  p.y_hat = predict_y(fit, data);
  p.x_hat = predict_x(fit, data, &p.x_real_part);
  for (const auto& v : p.y_hat) p.undefined_count_y += v.has_value() ? 0 : 1;
  for (const auto& v : p.x_hat) p.undefined_count_x += v.has_value() ? 0 : 1;
  return p;
}

}  // namespace implreg
