#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ustatboot {

/// Parzen kernel.
double parzen(double x) noexcept;

/// phi(x) = (k_P * k_P)(2x) / (k_P * k_P)(0), the correlation shape of the
/// multiplier sequences. Evaluated from a cubic Hermite table on 4097 points
/// over [-1, 1]; zero outside.
double phi(double x) noexcept;

/// phi''(0) (negative).
double phi_curvature();

/// Integral of phi^2 over [-1, 1].
double phi_l2();

namespace detail {
/// Exact (piecewise Gauss-Legendre) self-convolution (k_P * k_P)(u).
double parzen_self_convolution(double u) noexcept;
/// Integral of phi^2 with `panels` Gauss panels per quarter interval.
double phi_l2_quadrature(std::size_t panels);
}  // namespace detail

struct MultiplierConfig {
  std::size_t n = 0;
  std::size_t ell = 1;         ///< bandwidth, in observation-index units
  std::size_t replicates = 1;  ///< M
  std::uint64_t seed = 0;
};

/// M dependent multiplier sequences of length n, row-major.
class MultiplierBatch {
 public:
  MultiplierBatch(MultiplierConfig config, std::vector<double> values, std::vector<std::string> warnings);

  [[nodiscard]] const MultiplierConfig& config() const noexcept { return config_; }
  [[nodiscard]] std::size_t replicates() const noexcept { return config_.replicates; }
  [[nodiscard]] std::size_t length() const noexcept { return config_.n; }
  [[nodiscard]] std::span<const double> row(std::size_t m) const noexcept {
    return {values_.data() + m * config_.n, config_.n};
  }
  [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  MultiplierConfig config_;
  std::vector<double> values_;
  std::vector<std::string> warnings_;
};

/// Throws ArgumentError for n == 0, ell == 0, ell > n or replicates == 0.
/// Returns a warning message when ell > n / 2, empty otherwise.
std::string validate(const MultiplierConfig& config);

/// Half-width b = floor(ell / 2) + 1 of the moving-average window.
std::size_t multiplier_half_width(std::size_t ell) noexcept;

/// Moving-average weights w_j = k_P(j / b), j = -b..b (unnormalized).
std::vector<double> multiplier_weights(std::size_t ell);

/// Autocorrelation of the normalized weights at lags 0..2b. This is the exact
/// lag correlation of the generated sequences.
std::vector<double> weight_autocorrelation(std::size_t ell);

/// Writes replicate m of the batch described by `config` into `out` (length
/// n). Replicate m draws its innovations from substream m of config.seed, so
/// rows can be produced independently and in any order.
void generate_multiplier_row(const MultiplierConfig& config, std::size_t m, std::span<double> out);

/// Generates all M rows. Row m is independent of the worker count.
MultiplierBatch gen_multipliers(const MultiplierConfig& config, unsigned threads = 0);

}  // namespace ustatboot
