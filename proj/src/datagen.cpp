#include "ustatboot/datagen.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "ustatboot/distributions.hpp"
#include "ustatboot/error.hpp"

namespace ustatboot {

namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw ArgumentError("Kendall's tau must lie in [0, 1), got " + std::to_string(tau));
  }
}

double clamp_open(double u) {
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  return u < lo ? lo : (u > hi ? hi : u);
}

// Positive stable variate with Laplace transform exp(-s^a), 0 < a < 1 (Kanter).
double positive_stable(double a, Engine& engine) {
  const double u = std::numbers::pi * open_uniform(engine);
  const double w = -std::log(open_uniform(engine));
  return std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) *
         std::pow(std::sin((1.0 - a) * u) / w, (1.0 - a) / a);
}


}  // namespace

double copula_parameter(CopulaFamily family, double tau) {
  check_tau(tau);
  switch (family) {
    case CopulaFamily::Clayton:
      return 2.0 * tau / (1.0 - tau);
    case CopulaFamily::GumbelHougaard:
      return 1.0 / (1.0 - tau);
  }
  throw ArgumentError("unknown copula family");
}

std::vector<std::array<double, 2>> sample_copula(CopulaFamily family, double tau, std::size_t count,
                                                 Engine& engine) {
  const double theta = copula_parameter(family, tau);
  std::vector<std::array<double, 2>> out(count);
  if (tau == 0.0) {
    for (auto& u : out) {
      u[0] = open_uniform(engine);
      u[1] = open_uniform(engine);
    }
    return out;
  }
  if (family == CopulaFamily::Clayton) {
    std::gamma_distribution<double> frailty(1.0 / theta, 1.0);
    for (auto& u : out) {
      const double v = frailty(engine);
      for (double& c : u) {
        const double e = -std::log(open_uniform(engine));
        c = clamp_open(std::pow(1.0 + e / v, -1.0 / theta));
      }
    }
    return out;
  }
  const double a = 1.0 / theta;
  for (auto& u : out) {
    const double v = positive_stable(a, engine);
    for (double& c : u) {
      const double e = -std::log(open_uniform(engine));
      c = clamp_open(std::exp(-std::pow(e / v, a)));
    }
  }
  return out;
}

void validate(const DgpConfig& config) {
  if (config.n == 0) {
    throw SizeError("n must be >= 1");
  }
  if (const auto* ar = std::get_if<Ar1>(&config.model)) {
    if (!(std::abs(ar->zeta) < 1.0)) {
      throw ArgumentError("AR1 coefficient zeta must satisfy |zeta| < 1");
    }
  } else {
    const auto& g = std::get<Garch>(config.model);
    for (int j = 0; j < 2; ++j) {
      if (!(g.omega[j] > 0.0 && g.beta[j] >= 0.0 && g.alpha[j] >= 0.0 && g.beta[j] + g.alpha[j] < 1.0)) {
        throw ArgumentError("GARCH parameters need omega > 0, beta >= 0, alpha >= 0 and beta + alpha < 1");
      }
    }
  }
  if (const auto* c = std::get_if<CopulaInnovations>(&config.innovations)) {
    check_tau(c->before.tau);
    check_tau(c->after.tau);
    if (!(c->break_fraction > 0.0 && c->break_fraction < 1.0)) {
      throw ArgumentError("break fraction must lie in (0, 1)");
    }
  }
}

Sample generate(const DgpConfig& config, Engine& engine) {
  validate(config);
  const std::size_t n = config.n;
  const std::size_t d = config.dim();
  const std::size_t total = config.burn_in + n + 1;  // indices -burn_in..n

  // eps[t * d + j] holds the innovation for index t - burn_in.
  std::vector<double> eps(total * d);
  if (const auto* c = std::get_if<CopulaInnovations>(&config.innovations)) {
    const auto split = static_cast<std::size_t>(std::floor(static_cast<double>(n) * c->break_fraction));
    const std::size_t first = config.burn_in + split + 1;
    const auto before = sample_copula(c->before.family, c->before.tau, first, engine);
    const auto after = sample_copula(c->after.family, c->after.tau, total - first, engine);
    for (std::size_t t = 0; t < total; ++t) {
      const auto& u = t < first ? before[t] : after[t - first];
      eps[t * 2] = normal_quantile(u[0]);
      eps[t * 2 + 1] = normal_quantile(u[1]);
    }
  } else if (std::get<UnivariateInnovation>(config.innovations) == UnivariateInnovation::Normal) {
    std::normal_distribution<double> normal;
    for (double& e : eps) {
      e = normal(engine);
    }
  } else {
    std::student_t_distribution<double> student(5.0);
    for (double& e : eps) {
      e = student(engine);
    }
  }

  std::vector<double> x(total * d);
  if (const auto* ar = std::get_if<Ar1>(&config.model)) {
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = eps[j];
      for (std::size_t t = 1; t < total; ++t) {
        x[t * d + j] = ar->zeta * x[(t - 1) * d + j] + eps[t * d + j];
      }
    }
  } else {
    const auto& g = std::get<Garch>(config.model);
    for (std::size_t j = 0; j < d; ++j) {
      double sigma2 = g.omega[j] / (1.0 - g.beta[j] - g.alpha[j]);
      x[j] = std::sqrt(sigma2) * eps[j];
      for (std::size_t t = 1; t < total; ++t) {
        const double prev = eps[(t - 1) * d + j];
        sigma2 = g.omega[j] + g.beta[j] * sigma2 + g.alpha[j] * prev * prev;
        x[t * d + j] = std::sqrt(sigma2) * eps[t * d + j];
      }
    }
  }
  std::vector<double> rows(x.begin() + static_cast<std::ptrdiff_t>((config.burn_in + 1) * d), x.end());
  return Sample(n, d, std::move(rows));
}

Sample generate(const DgpConfig& config, std::uint64_t seed) {
  Engine engine = substream(seed, 0, StreamTag::Data);
  return generate(config, engine);
}

}  // namespace ustatboot
