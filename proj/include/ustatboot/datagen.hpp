#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ustatboot/kernel.hpp"
#include "ustatboot/rng.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

enum class CopulaFamily { Clayton, GumbelHougaard };

/// Copula parameter for a given Kendall's tau in [0, 1).
/// Clayton: 2 tau / (1 - tau). Gumbel-Hougaard: 1 / (1 - tau).
double copula_parameter(CopulaFamily family, double tau);

/// `count` draws from a bivariate Archimedean copula with Kendall's tau,
/// via the Marshall-Olkin frailty construction (gamma frailty for Clayton,
/// positive stable frailty for Gumbel-Hougaard). tau = 0 gives independent
/// uniforms. All coordinates lie strictly inside (0, 1).
std::vector<std::array<double, 2>> sample_copula(CopulaFamily family, double tau, std::size_t count,
                                                 Engine& engine);

struct Ar1 {
  double zeta = 0.0;
};

/// X_ij = sigma_ij eps_ij with sigma_ij^2 = omega_j + beta_j sigma_{i-1,j}^2 + alpha_j eps_{i-1,j}^2.
struct Garch {
  std::array<double, 2> omega{0.012, 0.037};
  std::array<double, 2> beta{0.919, 0.868};
  std::array<double, 2> alpha{0.072, 0.115};
};

using TimeSeriesModel = std::variant<Ar1, Garch>;

enum class UnivariateInnovation { Normal, StudentT5 };

struct CopulaSpec {
  CopulaFamily family = CopulaFamily::Clayton;
  double tau = 0.0;
};

/// Bivariate innovations Phi^-1(U_i) with U_i ~ `before` for i <= floor(n t)
/// and U_i ~ `after` afterwards.
struct CopulaInnovations {
  CopulaSpec before;
  CopulaSpec after;
  double break_fraction = 0.5;
};

using Innovations = std::variant<UnivariateInnovation, CopulaInnovations>;

struct DgpConfig {
  std::size_t n = 100;
  TimeSeriesModel model = Ar1{};
  Innovations innovations = UnivariateInnovation::Normal;
  std::size_t burn_in = 100;

  [[nodiscard]] std::size_t dim() const noexcept {
    return std::holds_alternative<CopulaInnovations>(innovations) ? 2 : 1;
  }
};

/// Throws ArgumentError for out-of-range parameters.
void validate(const DgpConfig& config);

/// Draws innovations for indices -burn_in..n, runs the recursion from
/// X_{-burn_in} = eps_{-burn_in} (AR1) or sigma^2 = omega / (1 - beta - alpha)
/// (GARCH) and returns rows 1..n.
Sample generate(const DgpConfig& config, Engine& engine);
Sample generate(const DgpConfig& config, std::uint64_t seed);

}  // namespace ustatboot
