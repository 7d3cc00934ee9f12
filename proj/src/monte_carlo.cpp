#include "ustatboot/monte_carlo.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "ustatboot/error.hpp"
#include "ustatboot/inference.hpp"
#include "ustatboot/parallel.hpp"

namespace ustatboot {

namespace {

struct RepOutcome {
  std::vector<bool> hits;
  std::size_t ell = 0;
};

RepOutcome run_rep(const McConfig& config, double theta, std::size_t r) {
  Engine engine = substream(config.seed, r, StreamTag::Data);
  const Sample sample = generate(config.dgp, engine);
  const PrefixTable table = PrefixTable::build(sample, config.kernel, config.table);
  const std::uint64_t mseed = derive_seed(config.seed, r, StreamTag::Multiplier);
  InferenceOptions options;
  options.threads = 1;

  RepOutcome out;
  if (config.mode == McMode::Coverage) {
    const CIResult ci1 = ci_asymptotic(table, config.alpha, options);
    // Reuse the bandwidth chosen for CI1 so both intervals share sigma and ell.
    options.ell = ci1.ell;
    const CIResult ci2 = ci_bootstrap(table, config.alpha, config.replicates, mseed, options);
    out.hits = {ci1.lower <= theta && theta <= ci1.upper, ci2.lower <= theta && theta <= ci2.upper};
    out.ell = ci1.ell;
    return out;
  }
  const CpTestResult check = cp_test(table, CpMethod::BootstrapCheck, config.replicates, mseed, options);
  options.ell = check.ell;
  const CpTestResult asym = cp_test(table, CpMethod::Asymptotic, 0, mseed, options);
  out.hits = {check.p_value <= config.alpha, asym.p_value <= config.alpha};
  if (config.include_hat) {
    const CpTestResult hat = cp_test(table, CpMethod::BootstrapHat, config.replicates, mseed, options);
    out.hits.push_back(hat.p_value <= config.alpha);
  }
  out.ell = check.ell;
  return out;
}

}  // namespace

void validate(const McConfig& config) {
  validate(config.dgp);
  config.kernel.check_dim(config.dgp.dim());
  if (config.dgp.n < 8) {
    throw SizeError("Monte Carlo runs need n >= 8");
  }
  if (config.reps == 0) {
    throw ArgumentError("reps must be >= 1");
  }
  if (config.replicates == 0) {
    throw ArgumentError("replicate count M must be >= 1");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1)");
  }
  if (config.mode == McMode::Coverage) {
    if (static_cast<double>(config.replicates) * config.alpha < 1.0 - 1e-9) {
      throw ArgumentError("bootstrap interval needs M >= 1/alpha");
    }
    if (!config.theta_truth && config.truth_sample_size < 2) {
      throw ArgumentError("truth sample size must be >= 2");
    }
  }
}

std::optional<double> closed_form_theta(const DgpConfig& dgp, const Kernel& kernel) {
  const auto* ar = std::get_if<Ar1>(&dgp.model);
  const auto* innov = std::get_if<UnivariateInnovation>(&dgp.innovations);
  if (ar == nullptr || innov == nullptr) {
    return std::nullopt;
  }
  const double stationary = 1.0 / (1.0 - ar->zeta * ar->zeta);
  if (*innov == UnivariateInnovation::Normal) {
    if (kernel.kind() == KernelKind::Variance) {
      return stationary;
    }
    if (kernel.kind() == KernelKind::Gini) {
      // E|X - Y| = 2 s / sqrt(pi) for independent N(0, s^2) copies.
      return 2.0 * std::sqrt(stationary) / std::sqrt(std::numbers::pi);
    }
    return std::nullopt;
  }
  if (kernel.kind() == KernelKind::Variance) {
    return 5.0 / 3.0 * stationary;  // Var(t5) = 5/3
  }
  return std::nullopt;
}

double estimate_theta(const McConfig& config) {
  DgpConfig dgp = config.dgp;
  dgp.n = config.truth_sample_size;
  Engine engine = substream(config.seed, 0, StreamTag::Truth);
  const Sample sample = generate(dgp, engine);
  TableOptions options = config.table;
  options.policy = StoragePolicy::Streaming;
  return u_statistic(PrefixTable::build(sample, config.kernel, options), 1, sample.size());
}

McResult run_monte_carlo(const McConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  McResult result;
  result.reps = config.reps;
  double theta = 0.0;
  if (config.mode == McMode::Coverage) {
    if (config.theta_truth) {
      theta = *config.theta_truth;
      result.theta_source = "given";
    } else if (auto exact = closed_form_theta(config.dgp, config.kernel)) {
      theta = *exact;
      result.theta_source = "closed_form";
    } else {
      theta = estimate_theta(config);
      result.theta_source = "estimated";
    }
    result.theta_truth = theta;
  }

  std::vector<RepOutcome> outcomes(config.reps);
  parallel_for(config.reps, config.threads, [&](std::size_t r) {
    try {
      outcomes[r] = run_rep(config, theta, r);
    } catch (const std::exception& e) {
      throw DataError("Monte Carlo rep " + std::to_string(r) + " failed: " + e.what());
    }
  });

  std::vector<std::string> names;
  if (config.mode == McMode::Coverage) {
    names = {"CI1", "CI2"};
  } else {
    names = {"check", "asymptotic"};
    if (config.include_hat) {
      names.emplace_back("hat");
    }
  }
  const double reps = static_cast<double>(config.reps);
  double ell_sum = 0.0;
  for (const auto& o : outcomes) {
    ell_sum += static_cast<double>(o.ell);
  }
  result.mean_ell = ell_sum / reps;
  for (std::size_t k = 0; k < names.size(); ++k) {
    McMethodResult m;
    m.method = names[k];
    for (const auto& o : outcomes) {
      m.hits += o.hits[k] ? 1 : 0;
    }
    const double p = static_cast<double>(m.hits) / reps;
    m.percent = 100.0 * p;
    m.std_error = 100.0 * std::sqrt(p * (1.0 - p) / reps);
    result.methods.push_back(std::move(m));
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ustatboot
