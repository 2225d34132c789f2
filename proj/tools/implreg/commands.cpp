#include "implreg/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "implreg/compare.hpp"
#include "implreg/dataio.hpp"
#include "implreg/error.hpp"
#include "implreg/fitcore.hpp"
#include "implreg/formula.hpp"
#include "implreg/implicit.hpp"
#include "implreg/metrics.hpp"
#include "implreg/simulate.hpp"
#include "json.hpp"

namespace implreg::cli {

namespace {

/// Bad flag value detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v, int decimals) {
  if (!std::isfinite(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string fmt_g(double v) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct DataSource {
  std::string path;
  bool boyle = false;

  Dataset load() const {
    if (boyle) return boyle_dataset();
    if (path.empty()) throw UsageError("one of --data or --boyle is required");
    return read_csv_file(path);
  }
};

void add_data_flags(CLI::App* cmd, DataSource& src) {
  auto* data = cmd->add_option("--data", src.path, "CSV file with a two-field header");
  auto* boyle = cmd->add_flag("--boyle", src.boyle, "Use the bundled Boyle (1662) table");
  data->excludes(boyle);
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::size_t n = 50;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  int decimals = 10;
};

void print_constancy_line(std::ostream& out, const std::string& name, std::span<const double> v) {
  out << "constancy(" << name << ") = " << fmt(constancy_index(v), 6) << "\n";
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  SimulationConfig cfg{a.n, a.sigma, a.seed};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Dataset data = generate(cfg);
  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw Error("cannot write '" + a.out + "'");
    write_csv(file, data, a.decimals);
    if (!file) throw Error("write failed for '" + a.out + "'");
  }
  print_constancy_line(out, "x", data.xs());
  print_constancy_line(out, "y", data.ys());
  print_constancy_line(out, "xy", data.products());
  return kExitOk;
}

// --- fit --------------------------------------------------------------------

struct FitArgs {
  std::string model;
  DataSource data;
  bool reduce = false;
  double alpha = 0.05;
  std::string format = "text";
};

void print_fit_text(std::ostream& out, const ModelEvaluation& ev) {
  const FitResult& fit = ev.fit;
  out << "model: " << format_model(fit.spec) << "  (n = " << fit.n << ", dof = " << fit.residual_dof
      << ")\n";
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-8s %16s %14s %12s %10s\n", "term", "estimate", "std error", "t",
                "p");
  out << buf;
  for (const auto& c : fit.coefficients) {
    std::snprintf(buf, sizeof buf, "%-8s %16.9g %14.6g %12.4f %10.4g\n",
                  std::string(term_symbol(c.term)).c_str(), c.estimate, c.std_error, c.t_stat,
                  c.p_value);
    out << buf;
  }
  out << "R^2     = " << fmt(fit.r_squared, 6) << "\n";
  out << "SE_y    = " << fmt_g(ev.se_y.value_or(NAN)) << "\n";
  out << "SE_x    = " << fmt_g(ev.se_x.value_or(NAN)) << "\n";
  out << "theta_T = " << fmt(ev.theta_t.value_or(NAN), 4) << "\n";
  out << "h       = " << fmt_g(ev.height.value_or(NAN)) << "\n";
  if (ev.prediction) {
    out << "undefined estimates: y " << ev.prediction->undefined_count_y << ", x "
        << ev.prediction->undefined_count_x << "; real-part x estimates: "
        << ev.prediction->x_real_part.size() << "\n";
  }
  for (const auto& note : ev.notes) out << "note: " << note << "\n";
}

nlohmann::json fit_json(const ModelEvaluation& ev) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json coefs = json::array();
  for (const auto& c : ev.fit.coefficients) {
    coefs.push_back({{"term", std::string(term_symbol(c.term))},
                     {"estimate", c.estimate},
                     {"std_error", c.std_error},
                     {"t_stat", std::isfinite(c.t_stat) ? json(c.t_stat) : json(nullptr)},
                     {"p_value", c.p_value}});
  }
  return {{"model", format_model(ev.fit.spec)},
          {"n", ev.fit.n},
          {"residual_dof", ev.fit.residual_dof},
          {"coefficients", coefs},
          {"r_squared", ev.fit.r_squared},
          {"sse", ev.fit.sse},
          {"se_y", opt(ev.se_y)},
          {"se_x", opt(ev.se_x)},
          {"theta_t", opt(ev.theta_t)},
          {"height", opt(ev.height)},
          {"undefined_y", ev.prediction ? json(ev.prediction->undefined_count_y) : json(nullptr)},
          {"undefined_x", ev.prediction ? json(ev.prediction->undefined_count_x) : json(nullptr)},
          {"notes", ev.notes}};
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
  ModelSpec spec = ModelSpec::make(Term::kY, {}, true);
  try {
    spec = parse_model(a.model);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--model: ") + e.what());
  }
  const Dataset data = a.data.load();
  const FitResult full = fit_ols(spec, data);
  const ModelEvaluation full_ev = evaluate_model(full, data);

  if (a.format == "json") {
    nlohmann::json doc = {{"fit", fit_json(full_ev)}};
    if (a.reduce) {
      const ReductionResult red = reduce_model_traced(full, data, a.alpha);
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& s : red.steps) {
        steps.push_back({{"dropped", std::string(term_symbol(s.dropped))}, {"p_value", s.p_value}});
      }
      doc["elimination"] = steps;
      doc["reduced"] = fit_json(evaluate_model(red.fit, data));
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  print_fit_text(out, full_ev);
  if (a.reduce) {
    const ReductionResult red = reduce_model_traced(full, data, a.alpha);
    out << "\nbackward elimination (alpha = " << a.alpha << ")\n";
    if (red.steps.empty()) out << "  nothing dropped\n";
    for (const auto& s : red.steps) {
      out << "  dropped " << term_symbol(s.dropped) << " (p = " << fmt(s.p_value, 4) << ")\n";
    }
    out << "\n";
    print_fit_text(out, evaluate_model(red.fit, data));
  }
  return kExitOk;
}

// --- compare ----------------------------------------------------------------

struct CompareArgs {
  DataSource data;
  std::optional<double> sigma;
  std::size_t n = 50;
  std::uint64_t seed = 0;
  std::string format = "markdown";
  double alpha = 0.05;
  bool y_only = false;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  ComparisonOptions options;
  options.alpha = a.alpha;
  if (a.y_only) options.evaluation.mode = SquareSumsMode::kYOnly;
  Dataset data;
  if (a.sigma) {
    if (a.data.boyle || !a.data.path.empty()) throw UsageError("--sigma cannot be combined with --data/--boyle");
    SimulationConfig cfg{a.n, *a.sigma, a.seed};
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    data = generate(cfg);
    options.seed = a.seed;
  } else {
    data = a.data.load();
  }
  const ComparisonReport report = compare_models(data, options);
  if (a.format == "json") {
    out << render_json(report);
  } else if (a.format == "csv") {
    out << render_csv(report);
  } else {
    out << render_markdown(report);
  }
  return kExitOk;
}

// --- boyle ------------------------------------------------------------------

struct BoyleArgs {
  std::string format = "text";
  std::string plot_dir;
};

void write_histogram(const std::filesystem::path& path, std::span<const double> v) {
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  // Sturges
  const auto bins = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(v.size())))) + 1;
  const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
  std::vector<std::size_t> counts(bins, 0);
  for (double x : v) {
    auto k = static_cast<std::size_t>((x - lo) / width);
    counts[std::min(k, bins - 1)]++;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << "bin_lower,bin_upper,count\n";
  for (std::size_t k = 0; k < bins; ++k) {
    f << fmt(lo + width * static_cast<double>(k), 6) << ','
      << fmt(lo + width * static_cast<double>(k + 1), 6) << ',' << counts[k] << '\n';
  }
}

void write_plot_data(const std::filesystem::path& dir, const BoyleReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
  const Dataset& data = report.data;
  const char* slugs[] = {"nonresponse", "quadratic", "inverse"};
  for (std::size_t m = 0; m < report.models.size() && m < 3; ++m) {
    const auto& ev = report.models[m];
    if (!ev.prediction) continue;
    const auto path = dir / (std::string("overlay_") + slugs[m] + ".csv");
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << data.x_label() << ',' << data.y_label() << ',' << data.y_label() << "_hat,"
      << data.x_label() << "_hat\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto& yh = ev.prediction->y_hat[i];
      const auto& xh = ev.prediction->x_hat[i];
      f << fmt(data[i].x, 6) << ',' << fmt(data[i].y, 6) << ',' << (yh ? fmt(*yh, 6) : "") << ','
        << (xh ? fmt(*xh, 6) : "") << '\n';
    }
  }
  write_histogram(dir / "hist_volume.csv", data.xs());
  write_histogram(dir / "hist_pressure.csv", data.ys());
  write_histogram(dir / "hist_product.csv", data.products());
}

int cmd_boyle(const BoyleArgs& a, std::ostream& out) {
  const BoyleReport report = boyle_report();
  if (a.format == "json") {
    out << render_boyle_json(report);
  } else {
    out << render_boyle_text(report);
  }
  if (!a.plot_dir.empty()) write_plot_data(a.plot_dir, report);
  return kExitOk;
}

// --- constancy --------------------------------------------------------------

struct ConstancyArgs {
  DataSource data;
  std::vector<std::string> vars{"x", "y", "xy"};
};

int cmd_constancy(const ConstancyArgs& a, std::ostream& out) {
  for (const auto& v : a.vars) {
    if (v != "x" && v != "y" && v != "xy") throw UsageError("unknown variable '" + v + "'");
  }
  const Dataset data = a.data.load();
  out << "variable  constancy_index  self_weighting_mean\n";
  for (const auto& v : a.vars) {
    const std::vector<double> values = v == "x" ? data.xs() : v == "y" ? data.ys() : data.products();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s  %15.7f  %19.9g\n", v.c_str(), constancy_index(values),
                  self_weighting_mean(values));
    out << buf;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Implicit regression: rotational and non-response analysis over {1, x, y, xy}",
               "implreg"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate t~U(1,10), x=200/t, y=20t with noise");
  simulate->add_option("--n", sim.n, "Sample size")->check(CLI::PositiveNumber);
  simulate->add_option("--sigma", sim.sigma, "Error standard deviation")->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim.seed, "Generator seed");
  simulate->add_option("--out", sim.out, "Output CSV path");
  simulate->add_option("--decimals", sim.decimals, "Decimal places in the CSV")->check(CLI::Range(0, 17));

  FitArgs fit;
  auto* fitcmd = app.add_subcommand("fit", "Fit one implicit model");
  fitcmd->add_option("--model", fit.model, "Model, e.g. \"1 ~ x + y + x*y\"")->required();
  add_data_flags(fitcmd, fit.data);
  fitcmd->add_flag("--reduce", fit.reduce, "Backward elimination by p-value");
  fitcmd->add_option("--alpha", fit.alpha, "Elimination threshold")->check(CLI::Range(0.0, 1.0));
  fitcmd->add_option("--format", fit.format)->check(CLI::IsMember({"text", "json"}));

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare the seven reference models");
  add_data_flags(compare, cmp.data);
  compare->add_option("--sigma", cmp.sigma, "Simulate instead of reading data")->check(CLI::NonNegativeNumber);
  compare->add_option("--n", cmp.n, "Simulated sample size")->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp.seed, "Simulation seed");
  compare->add_option("--format", cmp.format)->check(CLI::IsMember({"markdown", "csv", "json"}));
  compare->add_option("--alpha", cmp.alpha, "Elimination threshold")->check(CLI::Range(0.0, 1.0));
  compare->add_flag("--y-only", cmp.y_only, "Square sums over y alone");

  BoyleArgs boy;
  auto* boyle = app.add_subcommand("boyle", "Verify Boyle's law on the bundled 1662 table");
  boyle->add_option("--format", boy.format)->check(CLI::IsMember({"text", "json"}));
  boyle->add_option("--plot-data-dir", boy.plot_dir, "Directory for overlay and histogram CSVs");

  ConstancyArgs con;
  auto* constancy = app.add_subcommand("constancy", "Constancy index and self-weighting mean");
  add_data_flags(constancy, con.data);
  constancy->add_option("--vars", con.vars, "Subset of x,y,xy")->delimiter(',');

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*fitcmd) return cmd_fit(fit, out);
    if (*compare) return cmd_compare(cmp, out);
    if (*boyle) return cmd_boyle(boy, out);
    if (*constancy) return cmd_constancy(con, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace implreg::cli
