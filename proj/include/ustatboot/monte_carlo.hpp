#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ustatboot/datagen.hpp"
#include "ustatboot/kernel.hpp"
#include "ustatboot/prefix_table.hpp"

namespace ustatboot {

enum class McMode { Coverage, CpLevel, CpPower };

struct McConfig {
  DgpConfig dgp;
  Kernel kernel = Kernel::variance();
  std::size_t reps = 100;
  std::size_t replicates = 1000;  ///< M
  double alpha = 0.05;
  McMode mode = McMode::Coverage;
  std::optional<double> theta_truth;
  std::size_t truth_sample_size = 20000;
  bool include_hat = false;  ///< also run the hat bootstrap in cp modes
  std::uint64_t seed = 1;
  unsigned threads = 0;
  TableOptions table;
};

struct McMethodResult {
  std::string method;  ///< "CI1", "CI2", "check", "hat", "asymptotic"
  std::size_t hits = 0;
  double percent = 0.0;
  double std_error = 0.0;  ///< binomial standard error, in percentage points
};

struct McResult {
  std::vector<McMethodResult> methods;
  std::size_t reps = 0;
  std::optional<double> theta_truth;
  std::string theta_source;  ///< "given", "closed_form" or "estimated"; empty in cp modes
  double mean_ell = 0.0;  ///< average selected bandwidth over reps
  double seconds = 0.0;
};

/// Throws ArgumentError on invalid configuration.
void validate(const McConfig& config);

/// Exact theta where the marginal law is known: Gaussian AR1 with the variance
/// or Gini kernel, and t5 AR1 with the variance kernel.
std::optional<double> closed_form_theta(const DgpConfig& dgp, const Kernel& kernel);

/// theta estimated as U_{h,1:N} from one sample of size truth_sample_size.
double estimate_theta(const McConfig& config);

/// Coverage: percentage of reps whose interval contains theta, for CI1 and CI2.
/// theta is config.theta_truth, else closed_form_theta, else estimate_theta.
/// Cp modes: percentage of reps with p-value <= alpha for the check bootstrap,
/// the asymptotic test and optionally the hat bootstrap. Rep r uses data
/// substream r and multiplier seed derive_seed(seed, r), so the result does
/// not depend on the worker count. A failing rep is rethrown as DataError
/// naming the rep index.
McResult run_monte_carlo(const McConfig& config);

}  // namespace ustatboot
