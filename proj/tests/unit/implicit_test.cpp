#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "implreg/dataio.hpp"
#include "implreg/error.hpp"
#include "implreg/implicit.hpp"

using namespace implreg;

namespace {

FitResult make_fit(const std::string& model, std::vector<double> estimates) {
  FitResult f;
  f.spec = parse_model(model);
  std::vector<Term> terms;
  if (f.spec.intercept()) terms.push_back(Term::kOne);
  for (Term t : f.spec.predictors()) terms.push_back(t);
  EXPECT_EQ(terms.size(), estimates.size());
  for (std::size_t j = 0; j < terms.size(); ++j) f.coefficients.push_back({terms[j], estimates[j]});
  return f;
}

}  // namespace

TEST(PredictY, InverseLaw) {
  const FitResult f = make_fit("1 ~ x*y", {1.0 / 4000});
  const Dataset d("x", "y", {{50, 0}, {200, 0}, {20, 0}});
  const auto y = predict_y(f, d);
  EXPECT_NEAR(*y[0], 80.0, 1e-12);
  EXPECT_NEAR(*y[1], 20.0, 1e-12);
  EXPECT_NEAR(*y[2], 200.0, 1e-12);
}

TEST(PredictY, IdentityLine) {
  const FitResult f = make_fit("y ~ 1 + x", {0, 1});
  const auto y = predict_y(f, Dataset("x", "y", {{7, 0}}));
  EXPECT_EQ(*y[0], 7.0);
}

TEST(PredictY, ClosedFormsMatchListedFormulas) {
  const double a0 = 1.5, a1 = -0.25, a2 = 0.02, a3 = 0.003;
  const double x = 3.0;
  const Dataset d("x", "y", {{x, 0}});
  EXPECT_NEAR(*predict_y(make_fit("y ~ 1 + x + x*y", {a0, a1, a2}), d)[0], (a0 + a1 * x) / (1 - a2 * x), 1e-13);
  EXPECT_NEAR(*predict_y(make_fit("x ~ 1 + y + x*y", {a0, a1, a2}), d)[0], (x - a0) / (a1 + a2 * x), 1e-13);
  EXPECT_NEAR(*predict_y(make_fit("x*y ~ 1 + x + y", {a0, a1, a2}), d)[0], (a0 + a1 * x) / (x - a2), 1e-13);
  EXPECT_NEAR(*predict_y(make_fit("1 ~ x + y + x*y", {a1, a2, a3}), d)[0], (1 - a1 * x) / (a2 + a3 * x), 1e-12);
  EXPECT_NEAR(*predict_y(make_fit("y ~ 1 + 1/x", {a0, a1}), d)[0], a0 + a1 / x, 1e-13);
  EXPECT_NEAR(*predict_y(make_fit("y ~ 1 + x + x^2", {a0, a1, a2}), d)[0], a0 + a1 * x + a2 * x * x, 1e-13);
}

TEST(PredictX, ClosedFormsMirror) {
  const double a0 = 1.5, a1 = -0.25, a2 = 0.02, a3 = 0.003;
  const double y = 4.0;
  const Dataset d("x", "y", {{1.0, y}});
  EXPECT_NEAR(*predict_x(make_fit("y ~ 1 + x + x*y", {a0, a1, a2}), d)[0], (y - a0) / (a1 + a2 * y), 1e-13);
  EXPECT_NEAR(*predict_x(make_fit("x ~ 1 + y + x*y", {a0, a1, a2}), d)[0], (a0 + a1 * y) / (1 - a2 * y), 1e-13);
  EXPECT_NEAR(*predict_x(make_fit("x*y ~ 1 + x + y", {a0, a1, a2}), d)[0], (a0 + a2 * y) / (y - a1), 1e-13);
  EXPECT_NEAR(*predict_x(make_fit("1 ~ x + y + x*y", {a1, a2, a3}), d)[0], (1 - a2 * y) / (a1 + a3 * y), 1e-12);
  EXPECT_NEAR(*predict_x(make_fit("1 ~ x*y", {a3}), d)[0], 1 / (a3 * y), 1e-10);
  EXPECT_NEAR(*predict_x(make_fit("y ~ 1 + 1/x", {a0, a1}), d)[0], a1 / (y - a0), 1e-13);
  EXPECT_NEAR(*predict_x(make_fit("y ~ 1 + x", {a0, a1}), d)[0], (y - a0) / a1, 1e-13);
}

TEST(PredictX, QuadraticRootSelection) {
  const FitResult square = make_fit("y ~ 1 + x + x^2", {0, 0, 1});
  std::vector<std::size_t> real_part;
  const auto x = predict_x(square, Dataset("x", "y", {{1.5, 4}, {-1.9, 4}, {3, -1}, {0, 4}}), &real_part);
  EXPECT_DOUBLE_EQ(*x[0], 2.0);
  EXPECT_DOUBLE_EQ(*x[1], -2.0);
  EXPECT_DOUBLE_EQ(*x[2], 0.0);  // complex pair, real part
  EXPECT_DOUBLE_EQ(*x[3], -2.0);  // equidistant roots: smaller one
  EXPECT_EQ(real_part, std::vector<std::size_t>{2});
}

TEST(PredictX, VanishingQuadraticFallsBackToLinear) {
  const FitResult f = make_fit("y ~ 1 + x + x^2", {1, 2, 1e-300});
  const auto x = predict_x(f, Dataset("x", "y", {{1, 5}}));
  EXPECT_NEAR(*x[0], 2.0, 1e-12);
}

TEST(Predict, SingularDenominatorsAreUndefinedAndCounted) {
  const FitResult f = make_fit("1 ~ x*y", {1.0 / 4000});
  const Dataset d("x", "y", {{0, 10}, {50, 0}, {20, 200}});
  const Prediction p = predict(f, d);
  EXPECT_FALSE(p.y_hat[0].has_value());
  EXPECT_FALSE(p.x_hat[1].has_value());
  EXPECT_TRUE(p.y_hat[2].has_value());
  EXPECT_EQ(p.undefined_count_y, 1u);
  EXPECT_EQ(p.undefined_count_x, 1u);

  // Denominator 1 - a2 x cancels at x = 1/a2.
  const FitResult g = make_fit("y ~ 1 + x + x*y", {1, 1, 0.1});
  EXPECT_FALSE(predict_y(g, Dataset("x", "y", {{10, 1}}))[0].has_value());
}

TEST(Predict, UnsupportedAndAllSingular) {
  EXPECT_THROW(predict_y(make_fit("x ~ 1 + x^2", {1, 1}), Dataset("x", "y", {{1, 1}})),
               UnsupportedModelError);
  EXPECT_THROW(predict_x(make_fit("y ~ 1 + x^2 + 1/x", {1, 1, 1}), Dataset("x", "y", {{1, 1}})),
               UnsupportedModelError);
  EXPECT_THROW(predict_x(make_fit("y ~ 1", {1}), Dataset("x", "y", {{1, 1}})), UnsupportedModelError);
  EXPECT_THROW(predict_x(make_fit("y ~ 1 + x", {1, 0}), Dataset("x", "y", {{1, 1}, {2, 3}})),
               DegenerateError);
}

// A point satisfying the fitted equation maps to itself in both directions.
TEST(Predict, ConsistencyOnExactPoints) {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  std::uniform_real_distribution<double> xs(1.0, 5.0);
  const char* models[] = {"y ~ 1 + x + x*y", "x ~ 1 + y + x*y", "x*y ~ 1 + x + y", "1 ~ x + y + x*y",
                          "1 ~ x*y",         "y ~ 1 + 1/x",     "y ~ 1 + x",       "y ~ 1 + x + x^2",
                          "x ~ 1 + y",       "y ~ 1 + x*y",     "x*y ~ 1 + x"};
  int checked = 0;
  for (const char* m : models) {
    for (int rep = 0; rep < 50; ++rep) {
      const ModelSpec spec = parse_model(m);
      std::vector<double> est(spec.coefficient_count());
      for (auto& e : est) e = coef(gen) * (gen() % 2 ? 1 : -1) * 0.1;
      const FitResult f = make_fit(m, est);
      const double x = xs(gen);
      const auto y = predict_y(f, Dataset("x", "y", {{x, 0}}))[0];
      if (!y) continue;
      const ImplicitEquation eq = ImplicitEquation::from_fit(f);
      // skip near-singular draws where inversion is ill-conditioned
      const double dq = std::abs(eq.g(Term::kX) + eq.g(Term::kXY) * *y + 2 * eq.g(Term::kXSquared) * x -
                                 eq.g(Term::kInvX) / (x * x));
      if (dq < 1e-3 || std::abs(*y) > 1e6) continue;
      const auto xb = predict_x(f, Dataset("x", "y", {{x, *y}}))[0];
      ASSERT_TRUE(xb.has_value()) << m;
      EXPECT_NEAR(*xb, x, 1e-9 * std::max(1.0, std::abs(x))) << m;
      const auto yb = predict_y(f, Dataset("x", "y", {{*xb, 0}}))[0];
      EXPECT_NEAR(*yb, *y, 1e-9 * std::max(1.0, std::abs(*y))) << m;
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(Predict, BoyleNonResponseOverlay) {
  const Dataset d = boyle_dataset();
  const FitResult f = fit_ols(parse_model("1 ~ x + y + x*y"), d);
  const auto y = predict_y(f, d);
  double ss = 0;
  double mean = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    ASSERT_TRUE(y[i].has_value());
    ss += (*y[i] - d[i].y) * (*y[i] - d[i].y);
    mean += d[i].y;
  }
  mean /= static_cast<double>(d.size());
  EXPECT_LT(std::sqrt(ss / static_cast<double>(d.size())), 0.01 * mean);
}

TEST(Predict, BoyleQuadraticRealPartSetIsNegativeDiscriminantSet) {
  const Dataset d = boyle_dataset();
  const FitResult f = fit_ols(parse_model("y ~ 1 + x + x^2"), d);
  const double b0 = *f.coefficient(Term::kOne);
  const double b1 = *f.coefficient(Term::kX);
  const double b2 = *f.coefficient(Term::kXSquared);
  std::vector<std::size_t> negative;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (b1 * b1 - 4 * b2 * (b0 - d[i].y) < 0) negative.push_back(i);
  }
  const Prediction p = predict(f, d);
  EXPECT_EQ(p.x_real_part, negative);
  EXPECT_EQ(p.x_real_part, (std::vector<std::size_t>{0, 1, 2}));
  for (std::size_t i : p.x_real_part) EXPECT_DOUBLE_EQ(*p.x_hat[i], -b1 / (2 * b2));
}
