#include "ustatboot/process.hpp"

#include <cmath>

#include "ustatboot/error.hpp"

namespace ustatboot {

double ProcessPath::at(double s) const {
  if (values.empty()) {
    throw ArgumentError("empty process path");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ArgumentError("process argument must lie in [0, 1]");
  }
  const std::size_t n = this->n();
  auto k = static_cast<std::size_t>(std::floor(static_cast<double>(n) * s));
  return values[std::min(k, n)];
}

ProcessPath process_un(const PrefixTable& table, double theta) {
  const std::size_t n = table.size();
  if (n < 2) {
    throw SizeError("process_un requires n >= 2");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  ProcessPath path{std::vector<double>(n + 1, 0.0)};
  for (std::size_t k = 2; k <= n; ++k) {
    const double lambda = static_cast<double>(k) / static_cast<double>(n);
    path.values[k] = root_n * lambda * (u_statistic(table, 1, k) - theta);
  }
  return path;
}

ProcessPath process_un_star(const PrefixTable& table, double theta) {
  const std::size_t n = table.size();
  if (n < 2) {
    throw SizeError("process_un_star requires n >= 2");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  ProcessPath path{std::vector<double>(n + 1, 0.0)};
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    const double lambda = static_cast<double>(n - k) / static_cast<double>(n);
    path.values[k] = root_n * lambda * (u_statistic(table, k + 1, n) - theta);
  }
  return path;
}

ProcessPath process_dn(const PrefixTable& table) {
  const std::size_t n = table.size();
  if (n < 4) {
    throw SizeError("process_dn requires n >= 4");
  }
  const double nd = static_cast<double>(n);
  const double root_n = std::sqrt(nd);
  ProcessPath path{std::vector<double>(n + 1, 0.0)};
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    const double left = static_cast<double>(k) / nd;
    const double right = static_cast<double>(n - k) / nd;
    path.values[k] = root_n * left * right * (u_statistic(table, 1, k) - u_statistic(table, k + 1, n));
  }
  return path;
}

double statistic_sn(const ProcessPath& path) {
  const std::size_t n = path.n();
  double best = 0.0;
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    best = std::max(best, std::fabs(path.values[k]));
  }
  return best;
}

std::size_t argmax_abs(const ProcessPath& path) {
  const std::size_t n = path.n();
  if (n < 4) {
    throw SizeError("argmax_abs requires n >= 4");
  }
  std::size_t best_k = 2;
  double best = std::fabs(path.values[2]);
  for (std::size_t k = 3; k + 2 <= n; ++k) {
    const double v = std::fabs(path.values[k]);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace ustatboot
