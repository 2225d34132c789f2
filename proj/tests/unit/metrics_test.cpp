#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "implreg/compare.hpp"
#include "implreg/dataio.hpp"
#include "implreg/error.hpp"
#include "implreg/metrics.hpp"
#include "implreg/simulate.hpp"
#include "oracles.hpp"

using namespace implreg;

namespace {

Prediction exact_prediction(const Dataset& d) {
  Prediction p;
  for (const auto& r : d.rows()) {
    p.y_hat.emplace_back(r.y);
    p.x_hat.emplace_back(r.x);
  }
  return p;
}

double law_of_cosines_sst(const SquareSums& s, double theta_deg) {
  return s.ssm + s.sse - 2 * std::sqrt(s.ssm * s.sse) * std::cos(theta_deg * M_PI / 180.0);
}

}  // namespace

TEST(JointSquareSums, PerfectAndNullFits) {
  const Dataset d("x", "y", {{1, 5}, {2, 3}, {4, 4}, {7, 1}});
  const SquareSums perfect = joint_square_sums(d, exact_prediction(d));
  EXPECT_EQ(perfect.sse, 0.0);
  EXPECT_DOUBLE_EQ(perfect.ssm, perfect.sst);

  Prediction null_model;
  for (std::size_t i = 0; i < d.size(); ++i) {
    null_model.y_hat.emplace_back(13.0 / 4);
    null_model.x_hat.emplace_back(14.0 / 4);
  }
  const SquareSums null_sums = joint_square_sums(d, null_model);
  EXPECT_EQ(null_sums.ssm, 0.0);
  EXPECT_DOUBLE_EQ(null_sums.sse, null_sums.sst);
  EXPECT_THROW(separation_angle(null_sums), DegenerateError);
  EXPECT_THROW(separation_angle(perfect), DegenerateError);
}

TEST(JointSquareSums, DropsUndefinedPairwise) {
  const Dataset d("x", "y", {{1, 5}, {2, 3}, {4, 4}, {7, 1}});
  Prediction p = exact_prediction(d);
  p.x_hat[1].reset();
  const SquareSums joint = joint_square_sums(d, p);
  EXPECT_EQ(joint.n, 3u);
  const SquareSums y_only = joint_square_sums(d, p, SquareSumsMode::kYOnly);
  EXPECT_EQ(y_only.n, 4u);
  p.y_hat[0].reset();
  EXPECT_THROW(joint_square_sums(d, p), InsufficientDataError);
}

TEST(JointSquareSums, TooFewDefined) {
  const Dataset d("x", "y", {{1, 5}, {2, 3}, {4, 4}, {7, 1}});
  Prediction p = exact_prediction(d);
  p.x_hat[1].reset();
  p.y_hat[2].reset();
  EXPECT_THROW(joint_square_sums(d, p), InsufficientDataError);
}

TEST(SeparationAngle, PythagoreanCaseIsRightAngle) {
  EXPECT_NEAR(separation_angle({3.0, 4.0, 7.0, 10}), 90.0, 1e-12);
  EXPECT_NEAR(separation_angle({1.0, 1.0, 0.0, 10}), 0.0, 1e-6);
  EXPECT_THROW(separation_angle({1.0, 1.0, 10.0, 10}), DegenerateError);
}

// With-intercept OLS evaluated on its own response decomposes orthogonally.
TEST(SeparationAngle, OlsOnResponseAxisIsNinetyDegrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = generate({40, 5.0, seed});
    for (const char* text : {"y ~ 1 + x", "y ~ 1 + x + x*y", "x ~ 1 + y + x*y", "x*y ~ 1 + x + y",
                             "y ~ 1 + 1/x", "y ~ 1 + x + x^2"}) {
      const FitResult f = fit_ols(parse_model(text), d);
      const SquareSums s = axis_square_sums(response_values(f.spec, d), fitted_values(f, d));
      EXPECT_NEAR(separation_angle(s), 90.0, 1e-6) << text;
    }
    for (const char* text : {"y ~ 1 + x", "y ~ 1 + 1/x", "y ~ 1 + x + x^2"}) {
      const FitResult f = fit_ols(parse_model(text), d);
      const SquareSums s = joint_square_sums(d, predict(f, d), SquareSumsMode::kYOnly);
      EXPECT_NEAR(separation_angle(s), 90.0, 1e-6) << text;
    }
  }
}

TEST(SeparationAngle, LawOfCosinesReconstructsTotal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = generate({50, 1.0 + static_cast<double>(seed % 5), seed});
    for (const auto& entry : comparison_models()) {
      const FitResult f = fit_ols(entry.spec, d);
      const SquareSums s = joint_square_sums(d, predict(f, d));
      const double theta = separation_angle(s);
      EXPECT_NEAR(law_of_cosines_sst(s, theta), s.sst, 1e-9 * s.sst);
    }
  }
}

TEST(SeparationAngle, BoyleAnchors) {
  const Dataset d = boyle_dataset();
  const double expected[] = {92.97, 96.40, 84.3};
  const auto specs = boyle_models();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const FitResult f = fit_ols(specs[i], d);
    EXPECT_NEAR(separation_angle(joint_square_sums(d, predict(f, d))), expected[i], 0.5);
  }
}

TEST(RelativeHeight, ZeroResidualMeansZeroHeight) {
  EXPECT_EQ(relative_height({5.0, 0.0, 5.0, 10}, HeightNormalization::kNone), 0.0);
  EXPECT_THROW(relative_height({0.0, 0.0, 0.0, 10}), DegenerateError);
}

TEST(RelativeHeight, RightTriangle) {
  // legs 3 and 4, hypotenuse 5: height onto hypotenuse = 12/5
  EXPECT_NEAR(relative_height({9, 16, 25, 4}, HeightNormalization::kNone), 2.4, 1e-12);
  EXPECT_NEAR(relative_height({9, 16, 25, 4}, HeightNormalization::kInvSqrtSst), 2.4 / 5, 1e-12);
  EXPECT_NEAR(relative_height({9, 16, 25, 4}, HeightNormalization::kInvSqrtN), 1.2, 1e-12);
  EXPECT_NEAR(relative_height({9, 16, 25, 4}, HeightNormalization::kInvSqrtNSst), 0.24, 1e-12);
}

TEST(RelativeHeight, SymmetricInModelAndError) {
  std::mt19937_64 gen(67);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int i = 0; i < 500; ++i) {
    const double a = u(gen), b = u(gen);
    const double c = std::pow(u(gen) / 10 * (std::sqrt(a) + std::sqrt(b)), 2);
    if (std::sqrt(c) < std::abs(std::sqrt(a) - std::sqrt(b))) continue;
    for (auto norm : {HeightNormalization::kNone, HeightNormalization::kInvSqrtSst}) {
      EXPECT_NEAR(relative_height({a, b, c, 7}, norm), relative_height({b, a, c, 7}, norm), 1e-12);
    }
  }
}

TEST(RelativeHeight, BoyleOrderingAndCalibration) {
  const BoyleReport r = boyle_report();
  ASSERT_EQ(r.models.size(), 3u);
  const double h_nr = *r.models[0].height;
  const double h_quad = *r.models[1].height;
  const double h_inv = *r.models[2].height;
  EXPECT_LT(h_nr, h_inv);
  EXPECT_LT(h_inv, h_quad);
  EXPECT_EQ(r.calibrated, kDefaultHeightNormalization);
}

TEST(StandardErrors, ExactFitAndDof) {
  const Dataset d("x", "y", {{1, 5}, {2, 3}, {4, 4}, {7, 1}});
  const StandardErrors exact = standard_errors(d, exact_prediction(d), 2);
  EXPECT_EQ(exact.se_y, 0.0);
  EXPECT_EQ(exact.se_x, 0.0);

  Prediction p = exact_prediction(d);
  *p.y_hat[0] += 2;
  *p.x_hat[3] -= 3;
  p.x_hat[1].reset();
  const StandardErrors se = standard_errors(d, p, 1);
  EXPECT_DOUBLE_EQ(se.se_y, std::sqrt(4.0 / 3.0));
  EXPECT_DOUBLE_EQ(se.se_x, std::sqrt(9.0 / 2.0));
  EXPECT_EQ(se.defined_x, 3u);
  EXPECT_THROW(standard_errors(d, p, 3), InsufficientDataError);
}

TEST(RankModels, TableColumn) {
  const std::vector<double> r2{0.7575, 0.7575, 0.9989, 0.9920, 0.9545, 0.9989, 0.9989};
  EXPECT_EQ(rank_models(r2, RankDirection::kDescendingBetter),
            (std::vector<double>{6.5, 6.5, 2, 4, 5, 2, 2}));
  EXPECT_EQ(rank_models(std::vector<double>{1, 2, 3}, RankDirection::kAscendingBetter),
            (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(rank_models(std::vector<double>{89.1, 87.4, 91.0}, RankDirection::kNearest90Better),
            (std::vector<double>{1, 3, 2}));
}

TEST(RankModels, NaNRanksLast) {
  EXPECT_EQ(rank_models(std::vector<double>{NAN, 2, NAN, 1}, RankDirection::kAscendingBetter),
            (std::vector<double>{3.5, 2, 3.5, 1}));
}

TEST(RankModels, MatchesPairwiseOracleAndInvariants) {
  std::mt19937_64 gen(71);
  std::uniform_int_distribution<int> small(0, 5);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + gen() % 9;
    std::vector<double> v(n);
    for (auto& x : v) x = small(gen) * 0.5;  // forces ties
    const auto ranks = rank_models(v, RankDirection::kAscendingBetter);
    EXPECT_EQ(ranks, oracle::pairwise_ranks(v));
    EXPECT_DOUBLE_EQ(std::accumulate(ranks.begin(), ranks.end(), 0.0), n * (n + 1) / 2.0);

    std::vector<double> transformed(n);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = std::exp(v[i]) * 3 + 1;
    EXPECT_EQ(rank_models(transformed, RankDirection::kAscendingBetter), ranks);
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -v[i];
    EXPECT_EQ(rank_models(neg, RankDirection::kDescendingBetter), ranks);
  }
}
