#include "implreg/compare.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <tuple>

#include "implreg/dataio.hpp"
#include "implreg/error.hpp"
#include "json.hpp"

namespace implreg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double or_nan(const std::optional<double>& v) { return v ? *v : kNaN; }

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string rank_text(double r) {
  char buf[32];
  if (r == std::floor(r)) {
    std::snprintf(buf, sizeof buf, "%.0f", r);
  } else {
    std::snprintf(buf, sizeof buf, "%.1f", r);
  }
  return buf;
}

nlohmann::json num(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

}  // namespace

ModelEvaluation evaluate_model(FitResult fit, const Dataset& data, const EvaluationOptions& options) {
  ModelEvaluation ev;
  ev.fit = std::move(fit);
  try {
    ev.prediction = predict(ev.fit, data);
  } catch (const Error& e) {
    ev.notes.emplace_back(e.what());
    return ev;
  }
  const Prediction& pred = *ev.prediction;
  try {
    const StandardErrors se = standard_errors(data, pred, ev.fit.coefficients.size());
    ev.se_y = se.se_y;
    ev.se_x = se.se_x;
  } catch (const Error& e) {
    ev.notes.emplace_back(e.what());
  }
  try {
    ev.sums = joint_square_sums(data, pred, options.mode);
    ev.theta_t = separation_angle(*ev.sums);
    ev.height = relative_height(*ev.sums, options.normalization);
  } catch (const Error& e) {
    ev.notes.emplace_back(e.what());
  }
  if (pred.undefined_count_x + pred.undefined_count_y > 0) {
    ev.notes.push_back("undefined estimates: " + std::to_string(pred.undefined_count_y) + " y, " +
                       std::to_string(pred.undefined_count_x) + " x");
  }
  return ev;
}

std::vector<ModelListEntry> comparison_models() {
  return {
      {parse_model("y ~ 1 + x + x*y"), true},
      {parse_model("x ~ 1 + y + x*y"), true},
      {parse_model("x*y ~ 1 + x + y"), true},
      {parse_model("y ~ 1 + 1/x"), false},
      {parse_model("y ~ 1 + x + x^2"), false},
      {parse_model("1 ~ x + y + x*y"), false},
      {parse_model("1 ~ x*y"), false},
  };
}

ComparisonReport compare_models(const Dataset& data, const ComparisonOptions& options) {
  ComparisonReport report;
  report.n = data.size();
  report.x_label = data.x_label();
  report.y_label = data.y_label();
  report.options = options;

  for (const auto& entry : comparison_models()) {
    ComparisonRow row;
    row.model = format_model(entry.spec);
    FitResult fit = fit_ols(entry.spec, data);
    row.full_r_squared = fit.r_squared;
    if (entry.reduce) {
      ReductionResult reduced = reduce_model_traced(fit, data, options.alpha);
      if (!reduced.steps.empty()) {
        row.reduced_model = format_model(reduced.fit.spec);
        row.elimination = std::move(reduced.steps);
      }
      fit = std::move(reduced.fit);
    }
    row.evaluation = evaluate_model(std::move(fit), data, options.evaluation);
    report.rows.push_back(std::move(row));
  }

  const std::size_t m = report.rows.size();
  std::vector<double> r2(m), se_y(m), se_x(m), theta(m), height(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ev = report.rows[i].evaluation;
    r2[i] = ev.fit.r_squared;
    se_y[i] = or_nan(ev.se_y);
    se_x[i] = or_nan(ev.se_x);
    theta[i] = or_nan(ev.theta_t);
    height[i] = or_nan(ev.height);
  }
  const auto rk_r2 = rank_models(r2, RankDirection::kDescendingBetter);
  const auto rk_se_y = rank_models(se_y, RankDirection::kAscendingBetter);
  const auto rk_se_x = rank_models(se_x, RankDirection::kAscendingBetter);
  const auto rk_theta = rank_models(theta, RankDirection::kNearest90Better);
  const auto rk_h = rank_models(height, RankDirection::kAscendingBetter);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = report.rows[i];
    row.rank_r_squared = rk_r2[i];
    row.rank_se_y = rk_se_y[i];
    row.rank_se_x = rk_se_x[i];
    row.rank_theta_t = rk_theta[i];
    row.rank_height = rk_h[i];
  }
  return report;
}

std::string render_markdown(const ComparisonReport& report) {
  std::ostringstream out;
  out << "# Model comparison\n\n";
  out << "n = " << report.n << ", x = " << report.x_label << ", y = " << report.y_label << "\n\n";
  out << "| Model | Reduced | R^2 | SE_y | SE_x | theta_T | h | undef y | undef x |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : report.rows) {
    const auto& ev = row.evaluation;
    const std::size_t ux = ev.prediction ? ev.prediction->undefined_count_x : report.n;
    const std::size_t uy = ev.prediction ? ev.prediction->undefined_count_y : report.n;
    out << "| " << row.model << " | " << row.reduced_model.value_or("") << " | "
        << fixed(ev.fit.r_squared, 4) << " (" << rank_text(row.rank_r_squared) << ") | "
        << fixed(or_nan(ev.se_y), 2) << " (" << rank_text(row.rank_se_y) << ") | "
        << fixed(or_nan(ev.se_x), 2) << " (" << rank_text(row.rank_se_x) << ") | "
        << fixed(or_nan(ev.theta_t), 2) << " (" << rank_text(row.rank_theta_t) << ") | "
        << fixed(or_nan(ev.height), 5) << " (" << rank_text(row.rank_height) << ") | " << uy
        << " | " << ux << " |\n";
  }
  out << "\nheight normalization: "
      << normalization_name(report.options.evaluation.normalization)
      << "; square sums: "
      << (report.options.evaluation.mode == SquareSumsMode::kJoint ? "joint" : "y-only")
      << "; elimination alpha: " << report.options.alpha;
  if (report.options.seed) out << "; seed: " << *report.options.seed;
  out << "\n";
  return out.str();
}

std::string render_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "model,reduced_model,full_r_squared,r_squared,se_y,se_x,theta_t,height,"
         "undefined_y,undefined_x,real_part_x,rank_r_squared,rank_se_y,rank_se_x,"
         "rank_theta_t,rank_height\n";
  for (const auto& row : report.rows) {
    const auto& ev = row.evaluation;
    const std::size_t ux = ev.prediction ? ev.prediction->undefined_count_x : report.n;
    const std::size_t uy = ev.prediction ? ev.prediction->undefined_count_y : report.n;
    const std::size_t rp = ev.prediction ? ev.prediction->x_real_part.size() : 0;
    out << row.model << ',' << row.reduced_model.value_or("") << ','
        << fixed(row.full_r_squared, 10) << ',' << fixed(ev.fit.r_squared, 10) << ','
        << fixed(or_nan(ev.se_y), 10) << ',' << fixed(or_nan(ev.se_x), 10) << ','
        << fixed(or_nan(ev.theta_t), 10) << ',' << fixed(or_nan(ev.height), 10) << ',' << uy
        << ',' << ux << ',' << rp << ',' << rank_text(row.rank_r_squared) << ','
        << rank_text(row.rank_se_y) << ',' << rank_text(row.rank_se_x) << ','
        << rank_text(row.rank_theta_t) << ',' << rank_text(row.rank_height) << '\n';
  }
  return out.str();
}

std::string render_json(const ComparisonReport& report, int indent) {
  using nlohmann::json;
  json models = json::array();
  for (const auto& row : report.rows) {
    const auto& ev = row.evaluation;
    json elimination = json::array();
    for (const auto& s : row.elimination) {
      elimination.push_back({{"dropped", std::string(term_symbol(s.dropped))}, {"p_value", s.p_value}});
    }
    json coefficients = json::array();
    for (const auto& c : ev.fit.coefficients) {
      coefficients.push_back({{"term", std::string(term_symbol(c.term))},
                              {"estimate", c.estimate},
                              {"std_error", c.std_error},
                              {"p_value", c.p_value}});
    }
    models.push_back({
        {"model", row.model},
        {"reduced_model", row.reduced_model ? json(*row.reduced_model) : json(nullptr)},
        {"elimination", elimination},
        {"coefficients", coefficients},
        {"full_r_squared", row.full_r_squared},
        {"r_squared", ev.fit.r_squared},
        {"se_y", num(ev.se_y)},
        {"se_x", num(ev.se_x)},
        {"theta_t", num(ev.theta_t)},
        {"height", num(ev.height)},
        {"undefined_y", ev.prediction ? ev.prediction->undefined_count_y : report.n},
        {"undefined_x", ev.prediction ? ev.prediction->undefined_count_x : report.n},
        {"real_part_x", ev.prediction ? ev.prediction->x_real_part.size() : 0},
        {"ranks",
         {{"r_squared", row.rank_r_squared},
          {"se_y", row.rank_se_y},
          {"se_x", row.rank_se_x},
          {"theta_t", row.rank_theta_t},
          {"height", row.rank_height}}},
        {"notes", ev.notes},
    });
  }
  json doc = {
      {"dataset", {{"n", report.n}, {"x_label", report.x_label}, {"y_label", report.y_label}}},
      {"models", models},
      {"footer",
       {{"height_normalization",
         std::string(normalization_name(report.options.evaluation.normalization))},
        {"square_sums",
         report.options.evaluation.mode == SquareSumsMode::kJoint ? "joint" : "y_only"},
        {"elimination_alpha", report.options.alpha},
        {"seed", report.options.seed ? json(*report.options.seed) : json(nullptr)}}},
  };
  return doc.dump(indent) + "\n";
}

std::vector<ModelSpec> boyle_models() {
  return {parse_model("1 ~ x + y + x*y"), parse_model("y ~ 1 + x + x^2"),
          parse_model("y ~ 1 + 1/x")};
}

std::vector<BoyleAnchor> boyle_anchors() {
  return {{92.97, 0.01555}, {96.40, 0.94929}, {84.3, 0.02345}};
}

BoyleReport boyle_report(const EvaluationOptions& options) {
  BoyleReport report;
  report.data = boyle_dataset();
  report.constancy_volume = constancy_index(report.data.xs());
  report.constancy_pressure = constancy_index(report.data.ys());
  report.constancy_product = constancy_index(report.data.products());
  report.normalization = options.normalization;

  std::vector<HeightAnchor> anchors;
  const auto published = boyle_anchors();
  const auto specs = boyle_models();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    report.models.push_back(evaluate_model(fit_ols(specs[i], report.data), report.data, options));
    if (report.models.back().sums) anchors.push_back({*report.models.back().sums, published[i].height});
  }
  if (anchors.size() == specs.size()) {
    std::tie(report.calibrated, report.calibration_factor) = calibrate_height_normalization(anchors);
  }
  return report;
}

std::string render_boyle_text(const BoyleReport& report) {
  std::ostringstream out;
  out << "Boyle (1662), n = " << report.data.size() << "\n\n";
  out << "constancy index\n";
  out << "  " << report.data.x_label() << ": " << fixed(report.constancy_volume, 7) << "\n";
  out << "  " << report.data.y_label() << ": " << fixed(report.constancy_pressure, 7) << "\n";
  out << "  " << report.data.x_label() << "*" << report.data.y_label() << ": "
      << fixed(report.constancy_product, 7) << "\n\n";
  out << "model                  theta_T        h  real-part x\n";
  for (const auto& ev : report.models) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s %9s %8s %12zu\n", format_model(ev.fit.spec).c_str(),
                  fixed(or_nan(ev.theta_t), 2).c_str(), fixed(or_nan(ev.height), 5).c_str(),
                  ev.prediction ? ev.prediction->x_real_part.size() : std::size_t{0});
    out << buf;
  }
  out << "\nheight normalization: " << normalization_name(report.normalization)
      << " (calibrated: " << normalization_name(report.calibrated) << ", worst factor "
      << fixed(report.calibration_factor, 3) << ")\n";
  return out.str();
}

std::string render_boyle_json(const BoyleReport& report, int indent) {
  using nlohmann::json;
  json models = json::array();
  for (const auto& ev : report.models) {
    json real_part = json::array();
    if (ev.prediction) {
      for (std::size_t i : ev.prediction->x_real_part) real_part.push_back(i);
    }
    json coefficients = json::array();
    for (const auto& c : ev.fit.coefficients) {
      coefficients.push_back({{"term", std::string(term_symbol(c.term))}, {"estimate", c.estimate}});
    }
    models.push_back({{"model", format_model(ev.fit.spec)},
                      {"coefficients", coefficients},
                      {"r_squared", ev.fit.r_squared},
                      {"theta_t", num(ev.theta_t)},
                      {"height", num(ev.height)},
                      {"se_y", num(ev.se_y)},
                      {"se_x", num(ev.se_x)},
                      {"real_part_x", real_part}});
  }
  json doc = {
      {"n", report.data.size()},
      {"constancy",
       {{"volume", report.constancy_volume},
        {"pressure", report.constancy_pressure},
        {"product", report.constancy_product}}},
      {"models", models},
      {"height_normalization", std::string(normalization_name(report.normalization))},
      {"calibrated_normalization", std::string(normalization_name(report.calibrated))},
      {"calibration_factor", report.calibration_factor},
  };
  return doc.dump(indent) + "\n";
}

}  // namespace implreg
