#include "ustatboot/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ustatboot/error.hpp"
#include "ustatboot/multiplier.hpp"

namespace ustatboot {

namespace {

// Clamped to the sample range so that constant input centers to exact zeros.
double mean_of(std::span<const double> values) {
  double sum = 0.0;
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return lo == hi ? lo : std::clamp(sum / static_cast<double>(values.size()), lo, hi);
}

// Lag-k autocovariance given the mean; zero for lags beyond the sample.
double autocovariance_centered(std::span<const double> values, double mean, std::size_t k) {
  const std::size_t n = values.size();
  if (k >= n) {
    return 0.0;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + k < n; ++i) {
    acc += (values[i] - mean) * (values[i + k] - mean);
  }
  return acc / static_cast<double>(n);
}

constexpr std::size_t kMinLength = 8;

}  // namespace

double autocovariance(std::span<const double> values, std::size_t k) {
  if (values.empty() || k >= values.size()) {
    throw ArgumentError("autocovariance: lag " + std::to_string(k) + " out of range for n = " +
                        std::to_string(values.size()));
  }
  return autocovariance_centered(values, mean_of(values), k);
}

std::size_t select_lag_cutoff(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < kMinLength) {
    throw SizeError("lag cutoff selection requires n >= 8");
  }
  const double mean = mean_of(values);
  const double gamma0 = autocovariance_centered(values, mean, 0);
  if (gamma0 <= 0.0) {
    return 1;
  }
  const double nd = static_cast<double>(n);
  const double log_n = std::log10(nd);
  const auto horizon = std::max<std::size_t>(5, static_cast<std::size_t>(std::ceil(std::sqrt(log_n))));
  const auto cap = static_cast<std::size_t>(std::ceil(std::sqrt(nd)));
  const double threshold = 2.0 * std::sqrt(log_n / nd);

  std::vector<double> rho(cap + horizon + 1, 0.0);
  for (std::size_t k = 1; k < rho.size(); ++k) {
    rho[k] = autocovariance_centered(values, mean, k) / gamma0;
  }
  for (std::size_t m = 1; m <= cap; ++m) {
    bool negligible = true;
    for (std::size_t j = 1; j <= horizon && negligible; ++j) {
      negligible = std::fabs(rho[m + j]) < threshold;
    }
    if (negligible) {
      return m;
    }
  }
  return cap;
}

double flat_top(double x) noexcept { return std::min(std::max(2.0 * (1.0 - std::fabs(x)), 0.0), 1.0); }

BandwidthDiagnostics estimate_bandwidth(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < kMinLength) {
    throw SizeError("bandwidth estimation requires n >= 8");
  }
  BandwidthDiagnostics diag;
  diag.lag_cutoff = select_lag_cutoff(values);
  // Flat-top window of half-width 2 L_n, as in Politis and White.
  diag.window = std::min(2 * diag.lag_cutoff, n - 1);
  const std::size_t cutoff = diag.window;
  const double mean = mean_of(values);
  diag.gamma_hat.resize(cutoff + 1);
  for (std::size_t k = 0; k <= cutoff; ++k) {
    diag.gamma_hat[k] = autocovariance_centered(values, mean, k);
  }

  // Sums over k = -W..W folded onto k = 0..W.
  double curvature_sum = 0.0;
  double level_sum = diag.gamma_hat[0];
  for (std::size_t k = 1; k <= cutoff; ++k) {
    const double weight = flat_top(static_cast<double>(k) / static_cast<double>(cutoff));
    const double kd = static_cast<double>(k);
    curvature_sum += 2.0 * weight * kd * kd * diag.gamma_hat[k];
    level_sum += 2.0 * weight * diag.gamma_hat[k];
  }
  diag.bias_constant = 0.5 * phi_curvature() * curvature_sum + 0.0;  // no -0
  diag.variance_constant = 2.0 * level_sum * level_sum * phi_l2();

  const std::size_t cap = std::max<std::size_t>(1, n / 2);
  if (!(diag.variance_constant > 0.0)) {
    diag.ell_real = 1.0;
    diag.ell_opt = 1;
    return diag;
  }
  const double ratio = 4.0 * diag.bias_constant * diag.bias_constant / diag.variance_constant;
  diag.ell_real = std::pow(ratio, 0.2) * std::pow(static_cast<double>(n), 0.2);
  const double rounded = std::round(diag.ell_real);
  if (!(rounded >= 1.0)) {
    diag.ell_opt = 1;
  } else if (rounded >= static_cast<double>(cap)) {
    diag.ell_opt = cap;
  } else {
    diag.ell_opt = static_cast<std::size_t>(rounded);
  }
  return diag;
}

double longrun_variance(std::span<const double> values, std::size_t ell) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw SizeError("longrun_variance requires n >= 2");
  }
  if (ell == 0) {
    throw ArgumentError("longrun_variance requires ell >= 1");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += values[i] * values[i];
  }
  // phi((i - j) / ell) vanishes for |i - j| >= ell.
  for (std::size_t k = 1; k < std::min(ell, n); ++k) {
    const double weight = phi(static_cast<double>(k) / static_cast<double>(ell));
    double cross = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) {
      cross += values[i] * values[i + k];
    }
    total += 2.0 * weight * cross;
  }
  return std::max(0.0, total / static_cast<double>(n));
}

}  // namespace ustatboot
