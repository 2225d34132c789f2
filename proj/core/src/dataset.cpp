#include "implreg/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "implreg/error.hpp"

namespace implreg {

Dataset::Dataset(std::string x_label, std::string y_label, std::vector<Observation> rows)
    : x_label_(std::move(x_label)), y_label_(std::move(y_label)), rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!std::isfinite(rows_[i].x) || !std::isfinite(rows_[i].y)) {
      throw RangeError("non-finite value in row " + std::to_string(i + 1));
    }
  }
}

Dataset Dataset::from_columns(std::span<const double> xs, std::span<const double> ys,
                              std::string x_label, std::string y_label) {
  if (xs.size() != ys.size()) throw std::invalid_argument("column lengths differ");
  std::vector<Observation> rows(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) rows[i] = {xs[i], ys[i]};
  return Dataset(std::move(x_label), std::move(y_label), std::move(rows));
}

std::vector<double> Dataset::xs() const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.x);
  return out;
}

std::vector<double> Dataset::ys() const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.y);
  return out;
}

std::vector<double> Dataset::products() const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.x * r.y);
  return out;
}

}  // namespace implreg
