#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ustatboot/kernel.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

enum class StoragePolicy {
  Auto,       ///< dense when n <= dense_threshold
  Dense,      ///< keep the n x n kernel matrix and all row prefixes
  Streaming,  ///< keep row aggregates only, recompute kernel values on demand
};

struct TableOptions {
  std::size_t dense_threshold = 4096;
  StoragePolicy policy = StoragePolicy::Auto;
};

/// Pairwise kernel aggregates over a sample.
///
/// Index conventions follow the math: observations are numbered 1..n and a
/// prefix boundary k runs over 0..n.
///
///  - row_prefix(i, k) = R_i(k) = sum_{j <= k, j != i} h(X_i, X_j)
///  - row_suffix(i, k) = T_i(k) = sum_{j > k, j != i} h(X_i, X_j)
///  - pair_prefix(k)   = P(k)   = sum_{1 <= i < j <= k} h(X_i, X_j)
///  - pair_suffix(k)   = Q(k)   = sum_{k < i < j <= n} h(X_i, X_j)
///
/// All sums are accumulated with compensated summation. The table is
/// immutable after construction and safe for concurrent reads.
class PrefixTable {
 public:
  static PrefixTable build(const Sample& sample, const Kernel& kernel, TableOptions options = {});

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool dense() const noexcept { return dense_; }
  [[nodiscard]] const Sample& sample() const noexcept { return sample_; }
  [[nodiscard]] const Kernel& kernel() const noexcept { return kernel_; }

  /// h(X_i, X_j), 1-based; zero on the diagonal.
  [[nodiscard]] double kernel_value(std::size_t i, std::size_t j) const;

  /// Row i of the kernel matrix (length n, zero diagonal), 1-based i. Only
  /// available for dense tables.
  [[nodiscard]] std::span<const double> kernel_row(std::size_t i) const;

  /// Writes row i of the kernel matrix into `out` (length n). Works for both
  /// storage policies.
  void fill_kernel_row(std::size_t i, std::span<double> out) const;

  [[nodiscard]] double row_prefix(std::size_t i, std::size_t k) const;
  [[nodiscard]] double row_suffix(std::size_t i, std::size_t k) const;
  /// R_i(n).
  [[nodiscard]] double row_total(std::size_t i) const;
  /// sum_{j < i} h(X_i, X_j) = R_i(i).
  [[nodiscard]] double row_lower(std::size_t i) const;
  /// sum_{j > i} h(X_i, X_j) = T_i(i).
  [[nodiscard]] double row_upper(std::size_t i) const;

  [[nodiscard]] double pair_prefix(std::size_t k) const;
  [[nodiscard]] double pair_suffix(std::size_t k) const;

  /// sum_{j = k..l, j != i} h(X_i, X_j) for 1 <= k <= l <= n, i in 1..n.
  [[nodiscard]] double row_range_sum(std::size_t i, std::size_t k, std::size_t l) const;

  /// sum_{k <= i < j <= l} h(X_i, X_j) for 1 <= k <= l <= n.
  [[nodiscard]] double pair_range_sum(std::size_t k, std::size_t l) const;

 private:
  PrefixTable() = default;

  void check_obs(std::size_t i) const;
  void check_boundary(std::size_t k) const;

  Sample sample_;
  Kernel kernel_ = Kernel::variance();
  std::size_t n_ = 0;
  bool dense_ = false;
  std::vector<double> matrix_;      // n x n, dense only
  std::vector<double> row_prefix_;  // n x (n + 1), dense only
  std::vector<double> row_lower_;   // n
  std::vector<double> row_upper_;   // n
  std::vector<double> pair_prefix_; // n + 1
  std::vector<double> pair_suffix_; // n + 1
};

/// Free-function spelling of PrefixTable::build.
inline PrefixTable build_prefix_table(const Sample& sample, const Kernel& kernel,
                                      TableOptions options = {}) {
  return PrefixTable::build(sample, kernel, options);
}

/// U_{h,k:l}, the U-statistic over observations k..l (1-based, inclusive).
/// Returns 0 when k == l.
double u_statistic(const PrefixTable& table, std::size_t k, std::size_t l);

/// Pseudo-observations hat h_{1,k:l}(X_i), i = k..l. Returns {0} when k == l.
std::vector<double> pseudo_obs(const PrefixTable& table, std::size_t k, std::size_t l);

/// Full-sample pseudo-observations hat h_{1,1:n}(X_i), i = 1..n.
std::vector<double> pseudo_obs(const PrefixTable& table);

}  // namespace ustatboot
