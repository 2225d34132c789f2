#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "implreg/dataset.hpp"
#include "implreg/fitcore.hpp"
#include "implreg/implicit.hpp"
#include "implreg/metrics.hpp"

namespace implreg {

struct EvaluationOptions {
  HeightNormalization normalization = kDefaultHeightNormalization;
  SquareSumsMode mode = SquareSumsMode::kJoint;
};

/// Everything derived from one fitted model. Metrics that cannot be computed
/// (unsupported inversion, degenerate triangle) are left empty and the reason
/// goes to `notes`.
struct ModelEvaluation {
  FitResult fit;
  std::optional<Prediction> prediction;
  std::optional<SquareSums> sums;
  std::optional<double> se_y;
  std::optional<double> se_x;
  std::optional<double> theta_t;
  std::optional<double> height;
  std::vector<std::string> notes;
};

ModelEvaluation evaluate_model(FitResult fit, const Dataset& data,
                               const EvaluationOptions& options = {});

struct ComparisonRow {
  std::string model;
  /// Set when backward elimination removed at least one term.
  std::optional<std::string> reduced_model;
  std::vector<EliminationStep> elimination;
  double full_r_squared = 0.0;
  ModelEvaluation evaluation;

  double rank_r_squared = 0.0;
  double rank_se_y = 0.0;
  double rank_se_x = 0.0;
  double rank_theta_t = 0.0;
  double rank_height = 0.0;
};

struct ComparisonOptions {
  double alpha = 0.05;
  EvaluationOptions evaluation;
  /// Generator seed when the data were simulated; echoed in the footer.
  std::optional<std::uint64_t> seed;
};

struct ModelListEntry {
  ModelSpec spec;
  /// Rotations are reported after p-value reduction.
  bool reduce;
};

/// The seven comparison models, in report order.
std::vector<ModelListEntry> comparison_models();

struct ComparisonReport {
  std::size_t n = 0;
  std::string x_label;
  std::string y_label;
  std::vector<ComparisonRow> rows;
  ComparisonOptions options;
};

ComparisonReport compare_models(const Dataset& data, const ComparisonOptions& options = {});

std::string render_markdown(const ComparisonReport& report);
std::string render_csv(const ComparisonReport& report);
std::string render_json(const ComparisonReport& report, int indent = 2);

/// Published anchors for the three Boyle models, in boyle_models() order.
struct BoyleAnchor {
  double theta_t;
  double height;
};

/// Non-response all-terms, quadratic in x, inverse in x.
std::vector<ModelSpec> boyle_models();
std::vector<BoyleAnchor> boyle_anchors();

struct BoyleReport {
  Dataset data;
  double constancy_volume = 0.0;
  double constancy_pressure = 0.0;
  double constancy_product = 0.0;
  std::vector<ModelEvaluation> models;
  HeightNormalization normalization = kDefaultHeightNormalization;
  /// Normalization chosen by calibrating against the anchors, with its worst
  /// relative factor.
  HeightNormalization calibrated = kDefaultHeightNormalization;
  double calibration_factor = 1.0;
};

BoyleReport boyle_report(const EvaluationOptions& options = {});

std::string render_boyle_text(const BoyleReport& report);
std::string render_boyle_json(const BoyleReport& report, int indent = 2);

}  // namespace implreg
