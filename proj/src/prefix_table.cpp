#include "ustatboot/prefix_table.hpp"

#include <cmath>
#include <string>

#include "ustatboot/detail/summation.hpp"
#include "ustatboot/error.hpp"

namespace ustatboot {

namespace {

double checked_value(double value, std::size_t i, std::size_t j) {
  if (!std::isfinite(value)) {
    throw DataError("non-finite kernel value at pair (" + std::to_string(i + 1) + ", " +
                    std::to_string(j + 1) + ")");
  }
  return value;
}

double choose2(std::size_t m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

}  // namespace

PrefixTable PrefixTable::build(const Sample& sample, const Kernel& kernel, TableOptions options) {
  const std::size_t n = sample.size();
  if (n == 0) {
    throw SizeError("prefix table requires n >= 1");
  }
  kernel.check_dim(sample.dim());

  PrefixTable table;
  table.sample_ = sample;
  table.kernel_ = kernel;
  table.n_ = n;
  table.dense_ = options.policy == StoragePolicy::Dense ||
                 (options.policy == StoragePolicy::Auto && n <= options.dense_threshold);
  table.row_lower_.assign(n, 0.0);
  table.row_upper_.assign(n, 0.0);

  kernel.visit([&](const auto& h) {
    if (table.dense_) {
      table.matrix_.assign(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto xi = sample.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
          const double v = checked_value(h(xi, sample.row(j)), i, j);
          table.matrix_[i * n + j] = v;
          table.matrix_[j * n + i] = v;
        }
      }
      table.row_prefix_.assign(n * (n + 1), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double* row = table.matrix_.data() + i * n;
        double* prefix = table.row_prefix_.data() + i * (n + 1);
        detail::CompensatedSum acc;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) {
            acc.add(row[j]);
          }
          prefix[j + 1] = acc.value();
        }
        table.row_lower_[i] = prefix[i];
        detail::CompensatedSum upper;
        for (std::size_t j = i + 1; j < n; ++j) {
          upper.add(row[j]);
        }
        table.row_upper_[i] = upper.value();
      }
    } else {
      std::vector<detail::CompensatedSum> lower(n);
      std::vector<detail::CompensatedSum> upper(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto xi = sample.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
          const double v = checked_value(h(xi, sample.row(j)), i, j);
          upper[i].add(v);
          lower[j].add(v);
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        table.row_lower_[i] = lower[i].value();
        table.row_upper_[i] = upper[i].value();
      }
    }
  });

  table.pair_prefix_.assign(n + 1, 0.0);
  table.pair_suffix_.assign(n + 1, 0.0);
  {
    detail::CompensatedSum acc;
    for (std::size_t k = 1; k <= n; ++k) {
      acc.add(table.row_lower_[k - 1]);
      table.pair_prefix_[k] = acc.value();
    }
  }
  {
    // Q(k) = Q(k + 1) + sum_{j > k + 1} h(X_{k+1}, X_j); Q(n - 1) = Q(n) = 0.
    detail::CompensatedSum acc;
    for (std::size_t k = n; k-- > 0;) {
      acc.add(table.row_upper_[k]);
      table.pair_suffix_[k] = acc.value();
    }
  }
  return table;
}

void PrefixTable::check_obs(std::size_t i) const {
  if (i < 1 || i > n_) {
    throw ArgumentError("observation index " + std::to_string(i) + " outside 1.." + std::to_string(n_));
  }
}

void PrefixTable::check_boundary(std::size_t k) const {
  if (k > n_) {
    throw ArgumentError("boundary index " + std::to_string(k) + " outside 0.." + std::to_string(n_));
  }
}

double PrefixTable::kernel_value(std::size_t i, std::size_t j) const {
  check_obs(i);
  check_obs(j);
  if (i == j) {
    return 0.0;
  }
  if (dense_) {
    return matrix_[(i - 1) * n_ + (j - 1)];
  }
  return kernel_(sample_.row(i - 1), sample_.row(j - 1));
}

std::span<const double> PrefixTable::kernel_row(std::size_t i) const {
  check_obs(i);
  if (!dense_) {
    throw ArgumentError("kernel_row requires a dense table");
  }
  return {matrix_.data() + (i - 1) * n_, n_};
}

void PrefixTable::fill_kernel_row(std::size_t i, std::span<double> out) const {
  check_obs(i);
  if (out.size() != n_) {
    throw ArgumentError("fill_kernel_row: output length must equal n");
  }
  if (dense_) {
    const double* row = matrix_.data() + (i - 1) * n_;
    std::copy(row, row + n_, out.begin());
    return;
  }
  const auto xi = sample_.row(i - 1);
  kernel_.visit([&](const auto& h) {
    for (std::size_t j = 0; j < n_; ++j) {
      out[j] = (j == i - 1) ? 0.0 : h(xi, sample_.row(j));
    }
  });
}

double PrefixTable::row_prefix(std::size_t i, std::size_t k) const {
  check_obs(i);
  check_boundary(k);
  if (dense_) {
    return row_prefix_[(i - 1) * (n_ + 1) + k];
  }
  if (k == n_) {
    return row_total(i);
  }
  if (k == i) {
    return row_lower_[i - 1];
  }
  return k == 0 ? 0.0 : row_range_sum(i, 1, k);
}

double PrefixTable::row_suffix(std::size_t i, std::size_t k) const {
  check_obs(i);
  check_boundary(k);
  if (k == n_) {
    return 0.0;
  }
  if (dense_) {
    const double* prefix = row_prefix_.data() + (i - 1) * (n_ + 1);
    return prefix[n_] - prefix[k];
  }
  if (k == i) {
    return row_upper_[i - 1];
  }
  return row_range_sum(i, k + 1, n_);
}

double PrefixTable::row_total(std::size_t i) const {
  check_obs(i);
  return row_lower_[i - 1] + row_upper_[i - 1];
}

double PrefixTable::row_lower(std::size_t i) const {
  check_obs(i);
  return row_lower_[i - 1];
}

double PrefixTable::row_upper(std::size_t i) const {
  check_obs(i);
  return row_upper_[i - 1];
}

double PrefixTable::pair_prefix(std::size_t k) const {
  check_boundary(k);
  return pair_prefix_[k];
}

double PrefixTable::pair_suffix(std::size_t k) const {
  check_boundary(k);
  return pair_suffix_[k];
}

double PrefixTable::row_range_sum(std::size_t i, std::size_t k, std::size_t l) const {
  check_obs(i);
  if (k < 1 || k > l || l > n_) {
    throw ArgumentError("row_range_sum: need 1 <= k <= l <= n");
  }
  if (dense_) {
    const double* prefix = row_prefix_.data() + (i - 1) * (n_ + 1);
    return prefix[l] - prefix[k - 1];
  }
  detail::CompensatedSum acc;
  const auto xi = sample_.row(i - 1);
  kernel_.visit([&](const auto& h) {
    for (std::size_t j = k; j <= l; ++j) {
      if (j != i) {
        acc.add(h(xi, sample_.row(j - 1)));
      }
    }
  });
  return acc.value();
}

double PrefixTable::pair_range_sum(std::size_t k, std::size_t l) const {
  if (k < 1 || k > l || l > n_) {
    throw ArgumentError("pair_range_sum: need 1 <= k <= l <= n");
  }
  if (k == l) {
    return 0.0;
  }
  if (k == 1) {
    return pair_prefix_[l];
  }
  if (l == n_) {
    return pair_suffix_[k - 1];
  }
  detail::CompensatedSum acc;
  if (dense_) {
    for (std::size_t i = k; i <= l; ++i) {
      acc.add(row_range_sum(i, i, l));
    }
    return acc.value();
  }
  kernel_.visit([&](const auto& h) {
    for (std::size_t i = k; i <= l; ++i) {
      const auto xi = sample_.row(i - 1);
      for (std::size_t j = i + 1; j <= l; ++j) {
        acc.add(h(xi, sample_.row(j - 1)));
      }
    }
  });
  return acc.value();
}

double u_statistic(const PrefixTable& table, std::size_t k, std::size_t l) {
  if (k < 1 || k > l || l > table.size()) {
    throw ArgumentError("u_statistic: need 1 <= k <= l <= n");
  }
  if (k == l) {
    return 0.0;
  }
  return table.pair_range_sum(k, l) / choose2(l - k + 1);
}

std::vector<double> pseudo_obs(const PrefixTable& table, std::size_t k, std::size_t l) {
  if (k < 1 || k > l || l > table.size()) {
    throw ArgumentError("pseudo_obs: need 1 <= k <= l <= n");
  }
  if (k == l) {
    return {0.0};
  }
  const double u = u_statistic(table, k, l);
  const double scale = 1.0 / static_cast<double>(l - k);
  std::vector<double> out(l - k + 1);
  for (std::size_t i = k; i <= l; ++i) {
    out[i - k] = table.row_range_sum(i, k, l) * scale - u;
  }
  return out;
}

std::vector<double> pseudo_obs(const PrefixTable& table) {
  const std::size_t n = table.size();
  if (n == 1) {
    return {0.0};
  }
  const double u = u_statistic(table, 1, n);
  const double scale = 1.0 / static_cast<double>(n - 1);
  std::vector<double> out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    out[i - 1] = table.row_total(i) * scale - u;
  }
  return out;
}

}  // namespace ustatboot
