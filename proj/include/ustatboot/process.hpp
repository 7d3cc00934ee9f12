#pragma once

#include <cstddef>
#include <vector>

#include "ustatboot/prefix_table.hpp"

namespace ustatboot {

/// A sequential process sampled on the grid s = k / n, k = 0..n.
///
/// The value at any s in [0, 1] is the value at floor(n s) / n.
struct ProcessPath {
  std::vector<double> values;

  [[nodiscard]] std::size_t n() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  [[nodiscard]] double at(double s) const;
};

/// U_n(k/n) = sqrt(n) (k/n) (U_{h,1:k} - theta) for k >= 2, 0 otherwise.
ProcessPath process_un(const PrefixTable& table, double theta);

/// U_n^*(k/n) = sqrt(n) ((n-k)/n) (U_{h,k+1:n} - theta) for k <= n - 2, 0 otherwise.
ProcessPath process_un_star(const PrefixTable& table, double theta);

/// D_n(k/n) = sqrt(n) (k/n) ((n-k)/n) (U_{h,1:k} - U_{h,k+1:n}) on 2 <= k <= n - 2.
ProcessPath process_dn(const PrefixTable& table);

/// max_{2 <= k <= n-2} |values[k]|; 0 when the range is empty.
double statistic_sn(const ProcessPath& path);

/// argmax_{2 <= k <= n-2} |values[k]|, ties to the smallest k. Requires n >= 4.
std::size_t argmax_abs(const ProcessPath& path);

}  // namespace ustatboot
