#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "implreg/dataset.hpp"
#include "implreg/implicit.hpp"

namespace implreg {

/// Sides of the data / mean / estimate triangle, squared.
struct SquareSums {
  double ssm = 0.0;
  double sse = 0.0;
  double sst = 0.0;
  /// Observations that contributed.
  std::size_t n = 0;
};

/// Which coordinates enter the square sums.
enum class SquareSumsMode {
  /// Both axes stacked: residuals in y and in x.
  kJoint,
  /// y only, over observations with a defined y-hat.
  kYOnly,
};

/// Square sums over observations where the required estimates are defined.
/// Means are taken over the included observations. Throws
/// InsufficientDataError with fewer than three of them.
SquareSums joint_square_sums(const Dataset& data, const Prediction& pred,
                             SquareSumsMode mode = SquareSumsMode::kJoint);

/// Single-axis square sums of observed against estimated values.
SquareSums axis_square_sums(std::span<const double> observed, std::span<const double> estimated);

/// Cosine-argument slack tolerated outside [-1, 1] before rejecting.
inline constexpr double kCosineSlack = 1e-9;

/// arccos((ssm + sse - sst) / (2 sqrt(ssm sse))) in degrees.
/// Throws DegenerateError when ssm or sse is zero or the sides do not form a
/// triangle.
double separation_angle(const SquareSums& s);

/// Normalization applied to the absolute triangle height.
enum class HeightNormalization { kNone, kInvSqrtSst, kInvSqrtN, kInvSqrtNSst };

/// Selected by calibration against the Boyle anchors (see
/// calibrate_height_normalization).
inline constexpr HeightNormalization kDefaultHeightNormalization = HeightNormalization::kInvSqrtSst;

std::string_view normalization_name(HeightNormalization n) noexcept;

/// Height of the triangle with sides sqrt(ssm), sqrt(sse), sqrt(sst) from
/// the estimate vertex onto the data-mean base, then normalized.
/// Zero when ssm or sse vanishes. Throws DegenerateError if sst == 0 or the
/// sides violate the triangle inequality.
double relative_height(const SquareSums& s,
                       HeightNormalization norm = kDefaultHeightNormalization);

struct HeightAnchor {
  SquareSums sums;
  double target;
};

/// Picks the normalization minimizing the worst |log(h / target)| over the
/// anchors. Returns the winner and its worst relative factor.
std::pair<HeightNormalization, double> calibrate_height_normalization(
    std::span<const HeightAnchor> anchors);

struct StandardErrors {
  double se_y = 0.0;
  double se_x = 0.0;
  std::size_t defined_y = 0;
  std::size_t defined_x = 0;
};

/// sqrt(sum (v - v_hat)^2 / (n_defined - n_params)) per axis over defined
/// estimates. Throws InsufficientDataError when an axis has <= n_params.
StandardErrors standard_errors(const Dataset& data, const Prediction& pred, std::size_t n_params);

enum class RankDirection { kAscendingBetter, kDescendingBetter, kNearest90Better };

/// Values closer than this (relative, floor 1) share a rank.
inline constexpr double kRankTieTolerance = 1e-9;

/// Average ranks (ties share the mean of their positions). NaN values rank
/// last, tied among themselves.
std::vector<double> rank_models(std::span<const double> values, RankDirection direction);

}  // namespace implreg
