#include "ustatboot/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ustatboot/error.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/rng.hpp"

namespace ustatboot {

namespace {

constexpr std::array<double, 4> kGauss4Nodes{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                             0.8611363115940526};
constexpr std::array<double, 4> kGauss4Weights{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                               0.3478548451374538};
constexpr std::array<double, 8> kGauss8Nodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                             -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                             0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGauss8Weights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                               0.2223810344533745, 0.1012285362903763};

double parzen_derivative(double x) noexcept {
  const double a = std::fabs(x);
  double d = 0.0;
  if (a <= 0.5) {
    d = -12.0 * a + 18.0 * a * a;
  } else if (a <= 1.0) {
    d = -6.0 * (1.0 - a) * (1.0 - a);
  }
  return x < 0 ? -d : d;
}

// Integral over [lo, hi] of f, where f is a polynomial of degree <= 7 between
// consecutive breakpoints.
template <class F>
double piecewise_gauss(double lo, double hi, std::array<double, 10> breaks, F&& f) {
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double left = lo;
  for (double b : breaks) {
    if (b <= left || b >= hi) {
      continue;
    }
    const double half = 0.5 * (b - left);
    const double mid = 0.5 * (b + left);
    for (std::size_t q = 0; q < kGauss4Nodes.size(); ++q) {
      total += half * kGauss4Weights[q] * f(mid + half * kGauss4Nodes[q]);
    }
    left = b;
  }
  const double half = 0.5 * (hi - left);
  const double mid = 0.5 * (hi + left);
  for (std::size_t q = 0; q < kGauss4Nodes.size(); ++q) {
    total += half * kGauss4Weights[q] * f(mid + half * kGauss4Nodes[q]);
  }
  return total;
}

std::array<double, 10> convolution_breaks(double u) noexcept {
  return {-1.0, -0.5, 0.0, 0.5, 1.0, u - 1.0, u - 0.5, u, u + 0.5, u + 1.0};
}

double self_convolution_derivative(double u) noexcept {
  if (std::fabs(u) >= 2.0) {
    return 0.0;
  }
  const double lo = std::max(-1.0, u - 1.0);
  const double hi = std::min(1.0, u + 1.0);
  return piecewise_gauss(lo, hi, convolution_breaks(u),
                         [u](double t) { return parzen(t) * parzen_derivative(u - t); });
}

// Cubic Hermite table of phi on [-1, 1].
class PhiTable {
 public:
  static constexpr std::size_t kPoints = 4097;

  PhiTable() {
    const double c0 = detail::parzen_self_convolution(0.0);
    step_ = 2.0 / static_cast<double>(kPoints - 1);
    for (std::size_t i = 0; i < kPoints; ++i) {
      const double x = -1.0 + step_ * static_cast<double>(i);
      values_[i] = detail::parzen_self_convolution(2.0 * x) / c0;
      slopes_[i] = 2.0 * self_convolution_derivative(2.0 * x) / c0;
    }
    values_[(kPoints - 1) / 2] = 1.0;
    slopes_[(kPoints - 1) / 2] = 0.0;
  }

  [[nodiscard]] double operator()(double x) const noexcept {
    const double a = std::fabs(x);
    if (!(a < 1.0)) {
      return 0.0;
    }
    // Symmetric: evaluate on [0, 1).
    const double pos = (a + 1.0) / step_;
    auto i = static_cast<std::size_t>(pos);
    if (i >= kPoints - 1) {
      i = kPoints - 2;
    }
    const double t = pos - static_cast<double>(i);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * values_[i] + h10 * step_ * slopes_[i] + h01 * values_[i + 1] + h11 * step_ * slopes_[i + 1];
  }

 private:
  double step_ = 0.0;
  std::array<double, kPoints> values_{};
  std::array<double, kPoints> slopes_{};
};

const PhiTable& phi_table() {
  static const PhiTable table;
  return table;
}

// Exact phi (no table), used for the L2 integral.
double phi_exact(double x) noexcept {
  static const double c0 = detail::parzen_self_convolution(0.0);
  return detail::parzen_self_convolution(2.0 * x) / c0;
}

}  // namespace

double parzen(double x) noexcept {
  const double a = std::fabs(x);
  if (a <= 0.5) {
    return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
  }
  if (a <= 1.0) {
    const double r = 1.0 - a;
    return 2.0 * r * r * r;
  }
  return 0.0;
}

namespace detail {

double parzen_self_convolution(double u) noexcept {
  if (std::fabs(u) >= 2.0) {
    return 0.0;
  }
  const double lo = std::max(-1.0, u - 1.0);
  const double hi = std::min(1.0, u + 1.0);
  return piecewise_gauss(lo, hi, convolution_breaks(u), [u](double t) { return parzen(t) * parzen(u - t); });
}

double phi_l2_quadrature(std::size_t panels) {
  if (panels == 0) {
    throw ArgumentError("phi_l2_quadrature: panels must be positive");
  }
  // phi is a degree-7 polynomial on each quarter of [0, 1].
  double total = 0.0;
  const double width = 0.25 / static_cast<double>(panels);
  for (std::size_t p = 0; p < 4 * panels; ++p) {
    const double left = width * static_cast<double>(p);
    const double half = 0.5 * width;
    const double mid = left + half;
    for (std::size_t q = 0; q < kGauss8Nodes.size(); ++q) {
      const double v = phi_exact(mid + half * kGauss8Nodes[q]);
      total += half * kGauss8Weights[q] * v * v;
    }
  }
  return 2.0 * total;
}

}  // namespace detail

double phi(double x) noexcept { return phi_table()(x); }

double phi_curvature() {
  // phi''(0) = 4 (k*k)''(0) / (k*k)(0) = -4 int k'^2 / int k^2.
  static const double value = [] {
    std::array<double, 10> breaks{-1.0, -0.5, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    const double slope_l2 = piecewise_gauss(-1.0, 1.0, breaks, [](double t) {
      const double d = parzen_derivative(t);
      return d * d;
    });
    return -4.0 * slope_l2 / detail::parzen_self_convolution(0.0);
  }();
  return value;
}

double phi_l2() {
  static const double value = detail::phi_l2_quadrature(4);
  return value;
}

MultiplierBatch::MultiplierBatch(MultiplierConfig config, std::vector<double> values,
                                 std::vector<std::string> warnings)
    : config_(config), values_(std::move(values)), warnings_(std::move(warnings)) {
  if (values_.size() != config_.n * config_.replicates) {
    throw ArgumentError("multiplier batch shape mismatch");
  }
}

std::string validate(const MultiplierConfig& config) {
  if (config.n == 0) {
    throw ArgumentError("multiplier length n must be >= 1");
  }
  if (config.ell == 0) {
    throw ArgumentError("multiplier bandwidth ell must be >= 1");
  }
  if (config.ell > config.n) {
    throw ArgumentError("multiplier bandwidth ell must not exceed n");
  }
  if (config.replicates == 0) {
    throw ArgumentError("replicate count M must be >= 1");
  }
  if (2 * config.ell > config.n) {
    return "bandwidth ell = " + std::to_string(config.ell) + " exceeds n/2 (n = " + std::to_string(config.n) +
           ")";
  }
  return {};
}

std::size_t multiplier_half_width(std::size_t ell) noexcept { return ell / 2 + 1; }

std::vector<double> multiplier_weights(std::size_t ell) {
  if (ell == 0) {
    throw ArgumentError("multiplier bandwidth ell must be >= 1");
  }
  const std::size_t b = multiplier_half_width(ell);
  std::vector<double> w(2 * b + 1);
  for (std::size_t j = 0; j <= 2 * b; ++j) {
    const double offset = static_cast<double>(j) - static_cast<double>(b);
    w[j] = parzen(offset / static_cast<double>(b));
  }
  return w;
}

std::vector<double> weight_autocorrelation(std::size_t ell) {
  const auto w = multiplier_weights(ell);
  double norm = 0.0;
  for (double v : w) {
    norm += v * v;
  }
  std::vector<double> rho(w.size());
  for (std::size_t h = 0; h < w.size(); ++h) {
    double acc = 0.0;
    for (std::size_t j = 0; j + h < w.size(); ++j) {
      acc += w[j] * w[j + h];
    }
    rho[h] = acc / norm;
  }
  return rho;
}

void generate_multiplier_row(const MultiplierConfig& config, std::size_t m, std::span<double> out) {
  if (out.size() != config.n) {
    throw ArgumentError("multiplier row buffer must have length n");
  }
  const auto w = multiplier_weights(config.ell);
  const std::size_t b = multiplier_half_width(config.ell);
  double norm = 0.0;
  for (double v : w) {
    norm += v * v;
  }
  const double inv_norm = 1.0 / std::sqrt(norm);

  Engine engine = substream(config.seed, m, StreamTag::Multiplier);
  std::normal_distribution<double> normal;
  std::vector<double> z(config.n + 2 * b);
  for (double& v : z) {
    v = normal(engine);
  }
  // w[0] = w[2b] = 0, so only the interior taps contribute.
  for (std::size_t i = 0; i < config.n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j < 2 * b; ++j) {
      acc += w[j] * z[i + j];
    }
    out[i] = acc * inv_norm;
  }
}

MultiplierBatch gen_multipliers(const MultiplierConfig& config, unsigned threads) {
  std::vector<std::string> warnings;
  if (auto warning = validate(config); !warning.empty()) {
    warnings.push_back(std::move(warning));
  }
  std::vector<double> values(config.n * config.replicates);
  parallel_for(config.replicates, threads, [&](std::size_t m) {
    generate_multiplier_row(config, m, std::span<double>(values.data() + m * config.n, config.n));
  });
  return MultiplierBatch(config, std::move(values), std::move(warnings));
}

}  // namespace ustatboot
