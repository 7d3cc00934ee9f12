#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ustatboot {

/// An n x d matrix of time-ordered observations, stored row-major.
///
/// Rows are observations X_1, ..., X_n. Construction rejects non-finite
/// entries and shapes that do not match the value count.
class Sample {
 public:
  Sample() = default;
  Sample(std::size_t n, std::size_t d, std::vector<double> values);

  /// A univariate sample (d = 1).
  static Sample from_column(std::vector<double> column);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t dim() const noexcept { return d_; }

  /// Observation i, 0-based.
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * d_, d_};
  }

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Column j as a copy.
  [[nodiscard]] std::vector<double> column(std::size_t j) const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
};

}  // namespace ustatboot
