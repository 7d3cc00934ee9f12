#include "ustatboot/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ustatboot {

namespace {

template <std::size_t N>
double poly(const double (&c)[N], double x) noexcept {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) {
    acc = acc * x + c[i];
  }
  return acc;
}

}  // namespace

double normal_quantile(double p) noexcept {
  // Wichura (1988), Algorithm AS 241 (PPND16).
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (p == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  if (p == 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  static constexpr double a[] = {3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
                                 1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                 3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[] = {1.0,
                                 4.2313330701600911252e+1,
                                 6.8718700749205790830e+2,
                                 5.3941960214247511077e+3,
                                 2.1213794301586595867e+4,
                                 3.9307895800092710610e+4,
                                 2.8729085735721942674e+4,
                                 5.2264952788528545610e+3};
  static constexpr double c[] = {1.42343711074968357734e0,  4.63033784615654529590e0,  5.76949722146069140550e0,
                                 3.64784832476320460504e0,  1.27045825245236838258e0,  2.41780725177450611770e-1,
                                 2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[] = {1.0,
                                 2.05319162663775882187e0,
                                 1.67638483018380384940e0,
                                 6.89767334985100004550e-1,
                                 1.48103976427480074590e-1,
                                 1.51986665636164571966e-2,
                                 5.47593808499534494600e-4,
                                 1.05075007164441684324e-9};
  static constexpr double e[] = {6.65790464350110377720e0,  5.46378491116411436990e0,  1.78482653991729133580e0,
                                 2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                 2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[] = {1.0,
                                 5.99832206555887937690e-1,
                                 1.36929880922735805310e-1,
                                 1.48753612908506148525e-2,
                                 7.86869131145613259100e-4,
                                 1.84631831751005468180e-5,
                                 1.42151175831644588870e-7,
                                 2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = q < 0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value = 0.0;
  if (r <= 5.0) {
    r -= 1.6;
    value = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    value = poly(e, r) / poly(f, r);
  }
  return q < 0 ? -value : value;
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_cdf(double x) noexcept {
  if (!(x > 0.0)) {
    return 0.0;
  }
  const double x2 = x * x;
  if (x < 1.0) {
    // Equivalent theta-function form sqrt(2 pi) / x sum_k exp(-(2k - 1)^2 pi^2 / (8 x^2)).
    // All terms are positive, so there is no cancellation near zero, and the
    // series converges within a few terms for x < 1.
    const double pi = std::numbers::pi;
    const double c = pi * pi / (8.0 * x2);
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      sum += term;
      if (term < 1e-17 * sum || term == 0.0) {
        break;
      }
    }
    return std::min(1.0, std::sqrt(2.0 * pi) / x * sum);
  }
  double sum = 0.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-2.0 * k * k * x2);
    sum += (k % 2 == 1) ? term : -term;
    const double next = std::exp(-2.0 * (k + 1.0) * (k + 1.0) * x2);
    if (next < 1e-12) {
      break;
    }
  }
  return std::min(1.0, std::max(0.0, 1.0 - 2.0 * sum));
}

}  // namespace ustatboot
