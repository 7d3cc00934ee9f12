#include "ustatboot/sample.hpp"

#include <cmath>
#include <string>

#include "ustatboot/error.hpp"

namespace ustatboot {

Sample::Sample(std::size_t n, std::size_t d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
  if (n_ == 0 || d_ == 0) {
    throw SizeError("sample must have at least one row and one column");
  }
  if (values_.size() != n_ * d_) {
    throw ArgumentError("sample shape " + std::to_string(n_) + "x" + std::to_string(d_) +
                        " does not match " + std::to_string(values_.size()) + " values");
  }
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (!std::isfinite(values_[idx])) {
      throw DataError("non-finite value at row " + std::to_string(idx / d_ + 1) + ", column " +
                      std::to_string(idx % d_ + 1));
    }
  }
}

Sample Sample::from_column(std::vector<double> column) {
  const std::size_t n = column.size();
  return Sample(n, 1, std::move(column));
}

std::vector<double> Sample::column(std::size_t j) const {
  if (j >= d_) {
    throw ArgumentError("column index out of range");
  }
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = values_[i * d_ + j];
  }
  return out;
}

}  // namespace ustatboot
