#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ustatboot {

struct BandwidthDiagnostics {
  std::size_t lag_cutoff = 1;      ///< L_n
  std::size_t window = 2;          ///< flat-top window half-width 2 L_n (capped at n - 1)
  std::vector<double> gamma_hat;   ///< sample autocovariances at lags 0..window
  double bias_constant = 0.0;      ///< Gamma-hat
  double variance_constant = 0.0;  ///< Delta-hat
  double ell_real = 0.0;           ///< (4 Gamma^2 / Delta)^(1/5) n^(1/5) before rounding
  std::size_t ell_opt = 1;         ///< selected bandwidth
};

/// Sample autocovariance at lag k with divisor n and centering at the mean.
double autocovariance(std::span<const double> values, std::size_t k);

/// Lag cutoff L_n: the smallest m >= 1 such that |rho(m + j)| < 2 sqrt(log10(n) / n)
/// for j = 1..K_n, K_n = max(5, ceil(sqrt(log10 n))). Scans m up to
/// ceil(sqrt(n)) and returns that cap when no m qualifies. Returns 1 for a
/// constant input. Requires n >= 8.
std::size_t select_lag_cutoff(std::span<const double> values);

/// Flat-top (trapezoidal) lag window min(max(2(1 - |x|), 0), 1).
double flat_top(double x) noexcept;

/// MSE-optimal multiplier bandwidth estimated from a pseudo-observation stream.
BandwidthDiagnostics estimate_bandwidth(std::span<const double> values);

/// HAC estimate n^-1 sum_{i,j} phi((i - j) / ell) y_i y_j, evaluated over the
/// band |i - j| < ell. Never negative.
double longrun_variance(std::span<const double> values, std::size_t ell);

}  // namespace ustatboot
