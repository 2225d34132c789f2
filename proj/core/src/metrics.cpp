#include "implreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "implreg/error.hpp"

namespace implreg {

namespace {

struct Accumulator {
  std::vector<double> observed;
  std::vector<double> estimated;
};

void add_axis(SquareSums& out, std::span<const double> obs, std::span<const double> est) {
  const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / static_cast<double>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    out.sse += (obs[i] - est[i]) * (obs[i] - est[i]);
    out.ssm += (est[i] - mean) * (est[i] - mean);
    out.sst += (obs[i] - mean) * (obs[i] - mean);
  }
}

double cosine(const SquareSums& s) {
  return (s.ssm + s.sse - s.sst) / (2.0 * std::sqrt(s.ssm * s.sse));
}

double checked_cosine(const SquareSums& s) {
  const double c = cosine(s);
  if (!std::isfinite(c) || std::abs(c) > 1.0 + kCosineSlack) {
    throw DegenerateError("square sums do not form a triangle");
  }
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

SquareSums axis_square_sums(std::span<const double> observed, std::span<const double> estimated) {
  if (observed.size() != estimated.size()) throw std::invalid_argument("length mismatch");
  if (observed.size() < 3) throw InsufficientDataError("square sums need at least 3 observations");
  SquareSums s;
  s.n = observed.size();
  add_axis(s, observed, estimated);
  return s;
}

SquareSums joint_square_sums(const Dataset& data, const Prediction& pred, SquareSumsMode mode) {
  if (pred.y_hat.size() != data.size() || pred.x_hat.size() != data.size()) {
    throw std::invalid_argument("prediction does not match the dataset");
  }
  Accumulator ys;
  Accumulator xs;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool y_ok = pred.y_hat[i].has_value();
    const bool x_ok = pred.x_hat[i].has_value();
    if (!y_ok || (mode == SquareSumsMode::kJoint && !x_ok)) continue;
    ys.observed.push_back(data[i].y);
    ys.estimated.push_back(*pred.y_hat[i]);
    if (mode == SquareSumsMode::kJoint) {
      xs.observed.push_back(data[i].x);
      xs.estimated.push_back(*pred.x_hat[i]);
    }
  }
  if (ys.observed.size() < 3) {
    throw InsufficientDataError("square sums need at least 3 defined observations, got " +
                                std::to_string(ys.observed.size()));
  }
  SquareSums s;
  s.n = ys.observed.size();
  add_axis(s, ys.observed, ys.estimated);
  if (mode == SquareSumsMode::kJoint) add_axis(s, xs.observed, xs.estimated);
  return s;
}

double separation_angle(const SquareSums& s) {
  if (!(s.ssm > 0.0) || !(s.sse > 0.0)) {
    throw DegenerateError("separation angle undefined: ssm or sse is zero");
  }
  return std::acos(checked_cosine(s)) * 180.0 / std::numbers::pi;
}

std::string_view normalization_name(HeightNormalization n) noexcept {
  switch (n) {
    case HeightNormalization::kNone:
      return "none";
    case HeightNormalization::kInvSqrtSst:
      return "inv_sqrt_sst";
    case HeightNormalization::kInvSqrtN:
      return "inv_sqrt_n";
    case HeightNormalization::kInvSqrtNSst:
      return "inv_sqrt_n_sst";
  }
  return "?";
}

double relative_height(const SquareSums& s, HeightNormalization norm) {
  if (!(s.sst > 0.0)) throw DegenerateError("relative height undefined: sst is zero");
  double h_abs = 0.0;
  if (s.ssm > 0.0 && s.sse > 0.0) {
    const double c = checked_cosine(s);
    // sqrt(ssm sse) sin(theta) / sqrt(sst)
    h_abs = std::sqrt(s.ssm * s.sse * (1.0 - c * c)) / std::sqrt(s.sst);
  }
  const double n = static_cast<double>(s.n);
  switch (norm) {
    case HeightNormalization::kNone:
      return h_abs;
    case HeightNormalization::kInvSqrtSst:
      return h_abs / std::sqrt(s.sst);
    case HeightNormalization::kInvSqrtN:
      return h_abs / std::sqrt(n);
    case HeightNormalization::kInvSqrtNSst:
      return h_abs / std::sqrt(n * s.sst);
  }
  return h_abs;
}

std::pair<HeightNormalization, double> calibrate_height_normalization(
    std::span<const HeightAnchor> anchors) {
  constexpr HeightNormalization kCandidates[] = {
      HeightNormalization::kNone, HeightNormalization::kInvSqrtSst, HeightNormalization::kInvSqrtN,
      HeightNormalization::kInvSqrtNSst};
  HeightNormalization best = kDefaultHeightNormalization;
  double best_err = std::numeric_limits<double>::infinity();
  for (HeightNormalization cand : kCandidates) {
    double worst = 0.0;
    for (const auto& a : anchors) {
      const double h = relative_height(a.sums, cand);
      const double err = (h > 0.0 && a.target > 0.0) ? std::abs(std::log(h / a.target))
                                                      : std::numeric_limits<double>::infinity();
      worst = std::max(worst, err);
    }
    if (worst < best_err) {
      best_err = worst;
      best = cand;
    }
  }
  return {best, std::exp(best_err)};
}

StandardErrors standard_errors(const Dataset& data, const Prediction& pred, std::size_t n_params) {
  StandardErrors out;
  double ss_y = 0.0;
  double ss_x = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (pred.y_hat[i]) {
      const double e = data[i].y - *pred.y_hat[i];
      ss_y += e * e;
      ++out.defined_y;
    }
    if (pred.x_hat[i]) {
      const double e = data[i].x - *pred.x_hat[i];
      ss_x += e * e;
      ++out.defined_x;
    }
  }
  if (out.defined_y <= n_params || out.defined_x <= n_params) {
    throw InsufficientDataError("standard errors need more than " + std::to_string(n_params) +
                                " defined estimates per axis");
  }
  out.se_y = std::sqrt(ss_y / static_cast<double>(out.defined_y - n_params));
  out.se_x = std::sqrt(ss_x / static_cast<double>(out.defined_x - n_params));
  return out;
}

std::vector<double> rank_models(std::span<const double> values, RankDirection direction) {
  const std::size_t n = values.size();
  // Smaller key is better; NaN goes last.
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = values[i];
    switch (direction) {
      case RankDirection::kAscendingBetter:
        key[i] = v;
        break;
      case RankDirection::kDescendingBetter:
        key[i] = -v;
        break;
      case RankDirection::kNearest90Better:
        key[i] = std::abs(v - 90.0);
        break;
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (std::isnan(key[a])) return false;
    if (std::isnan(key[b])) return true;
    return key[a] < key[b];
  });

  auto tied = [&](double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    if (a == b) return true;
    return std::abs(a - b) <= kRankTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
  };

  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && tied(key[order[start]], key[order[end]])) ++end;
    // positions start+1 .. end
    const double avg = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = avg;
    start = end;
  }
  return ranks;
}

}  // namespace implreg
