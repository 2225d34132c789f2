#pragma once

#include <span>
#include <string>
#include <vector>

namespace implreg {

struct Observation {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Ordered paired observations with axis labels. Rows are finite and keep
/// their source order.
class Dataset {
 public:
  Dataset() = default;
  /// Throws RangeError if any coordinate is not finite.
  Dataset(std::string x_label, std::string y_label, std::vector<Observation> rows);

  static Dataset from_columns(std::span<const double> xs, std::span<const double> ys,
                              std::string x_label = "x", std::string y_label = "y");

  const std::string& x_label() const noexcept { return x_label_; }
  const std::string& y_label() const noexcept { return y_label_; }
  const std::vector<Observation>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const Observation& operator[](std::size_t i) const { return rows_[i]; }

  std::vector<double> xs() const;
  std::vector<double> ys() const;
  /// x_i * y_i per row.
  std::vector<double> products() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::string x_label_ = "x";
  std::string y_label_ = "y";
  std::vector<Observation> rows_;
};

}  // namespace implreg
