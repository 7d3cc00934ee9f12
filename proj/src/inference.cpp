#include "ustatboot/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ustatboot/distributions.hpp"
#include "ustatboot/error.hpp"
#include "ustatboot/multiplier.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/process.hpp"

namespace ustatboot {

namespace {

constexpr std::size_t kMinLength = 8;

struct Prepared {
  double estimate = 0.0;
  std::vector<double> hat;
  std::optional<BandwidthDiagnostics> bandwidth;
  std::size_t ell = 1;
  double sigma = 0.0;
  std::vector<std::string> warnings;
};

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1)");
  }
}

Prepared prepare(const PrefixTable& table, const InferenceOptions& options) {
  const std::size_t n = table.size();
  if (n < kMinLength) {
    throw SizeError("inference requires n >= 8, got n = " + std::to_string(n));
  }
  Prepared p;
  p.estimate = u_statistic(table, 1, n);
  p.hat = pseudo_obs(table);
  if (options.ell) {
    if (*options.ell == 0 || *options.ell > n) {
      throw ArgumentError("ell must lie in 1..n");
    }
    p.ell = *options.ell;
  } else {
    p.bandwidth = estimate_bandwidth(p.hat);
    p.ell = p.bandwidth->ell_opt;
  }
  p.sigma = std::sqrt(longrun_variance(p.hat, p.ell));
  return p;
}

}  // namespace

CIResult ci_asymptotic(const PrefixTable& table, double alpha, const InferenceOptions& options) {
  check_alpha(alpha);
  Prepared p = prepare(table, options);
  CIResult r;
  r.estimate = p.estimate;
  r.alpha = alpha;
  r.method = IntervalMethod::Asymptotic;
  r.bandwidth = std::move(p.bandwidth);
  r.ell = p.ell;
  r.sigma_hat = p.sigma;
  r.warnings = std::move(p.warnings);
  if (p.sigma == 0.0) {
    r.lower = r.upper = r.estimate;
    r.degenerate = true;
    r.warnings.emplace_back("long-run variance estimate is zero; interval is degenerate");
    return r;
  }
  const double half_width = normal_quantile(1.0 - alpha / 2.0) * 2.0 * p.sigma /
                            std::sqrt(static_cast<double>(table.size()));
  r.lower = r.estimate - half_width;
  r.upper = r.estimate + half_width;
  return r;
}

CIResult ci_asymptotic(const Sample& sample, const Kernel& kernel, double alpha, const InferenceOptions& options) {
  kernel.check_dim(sample.dim());
  return ci_asymptotic(PrefixTable::build(sample, kernel, options.table), alpha, options);
}

std::pair<std::size_t, std::size_t> bootstrap_quantile_indices(double alpha, std::size_t replicates) {
  check_alpha(alpha);
  if (replicates == 0) {
    throw ArgumentError("replicate count M must be >= 1");
  }
  const double m1 = static_cast<double>(replicates) + 1.0;
  // The slack keeps exact products such as 0.975 * 5000 from rounding across
  // an integer.
  const double lo = std::ceil(alpha / 2.0 * m1 - 1e-9);
  const double hi = std::floor((1.0 - alpha / 2.0) * m1 + 1e-9);
  const auto clamp = [replicates](double v) {
    return static_cast<std::size_t>(std::clamp(v, 1.0, static_cast<double>(replicates)));
  };
  return {clamp(lo), clamp(hi)};
}

CIResult ci_bootstrap(const PrefixTable& table, double alpha, std::size_t replicates, std::uint64_t seed,
                      const InferenceOptions& options) {
  check_alpha(alpha);
  if (replicates == 0 || static_cast<double>(replicates) * alpha < 1.0 - 1e-9) {
    throw ArgumentError("bootstrap interval needs M >= 1/alpha");
  }
  Prepared p = prepare(table, options);
  const std::size_t n = table.size();
  const MultiplierConfig config{n, p.ell, replicates, seed};
  if (auto warning = validate(config); !warning.empty()) {
    p.warnings.push_back(std::move(warning));
  }

  // v_m = hat U_n^{(m)}(1) = (2 / sqrt n) sum_i xi_i hat h_{1,1:n}(X_i).
  const double scale = 2.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> v(replicates);
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (replicates + kBlock - 1) / kBlock;
  parallel_for(blocks, options.threads, [&](std::size_t b) {
    std::vector<double> xi(n);
    const std::size_t last = std::min(replicates, (b + 1) * kBlock);
    for (std::size_t m = b * kBlock; m < last; ++m) {
      generate_multiplier_row(config, m, xi);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += xi[i] * p.hat[i];
      }
      v[m] = scale * acc;
    }
  });
  std::sort(v.begin(), v.end());
  const auto [j_lo, j_hi] = bootstrap_quantile_indices(alpha, replicates);
  const double root_n = std::sqrt(static_cast<double>(n));

  CIResult r;
  r.estimate = p.estimate;
  r.alpha = alpha;
  r.method = IntervalMethod::Bootstrap;
  r.bandwidth = std::move(p.bandwidth);
  r.ell = p.ell;
  r.sigma_hat = p.sigma;
  r.replicates = replicates;
  r.warnings = std::move(p.warnings);
  r.lower = r.estimate - v[j_hi - 1] / root_n;
  r.upper = r.estimate - v[j_lo - 1] / root_n;
  if (r.lower > r.upper) {
    std::swap(r.lower, r.upper);
  }
  r.degenerate = r.lower == r.upper;
  if (r.degenerate) {
    r.warnings.emplace_back("all bootstrap replicates coincide; interval is degenerate");
  }
  return r;
}

CIResult ci_bootstrap(const Sample& sample, const Kernel& kernel, double alpha, std::size_t replicates,
                      std::uint64_t seed, const InferenceOptions& options) {
  kernel.check_dim(sample.dim());
  return ci_bootstrap(PrefixTable::build(sample, kernel, options.table), alpha, replicates, seed, options);
}

CpTestResult cp_test(const PrefixTable& table, CpMethod method, std::size_t replicates, std::uint64_t seed,
                     const InferenceOptions& options) {
  Prepared p = prepare(table, options);
  const std::size_t n = table.size();
  const ProcessPath dn = process_dn(table);

  CpTestResult r;
  r.statistic = statistic_sn(dn);
  r.change_point = argmax_abs(dn);
  r.method = method;
  r.sigma_hat = p.sigma;
  r.bandwidth = std::move(p.bandwidth);
  r.ell = p.ell;
  r.warnings = std::move(p.warnings);

  switch (method) {
    case CpMethod::Asymptotic:
      if (p.sigma == 0.0) {
        r.degenerate = true;
        r.p_value = r.statistic == 0.0 ? 1.0 : 0.0;
        r.warnings.emplace_back("long-run variance estimate is zero; p-value is degenerate");
      } else {
        r.p_value = 1.0 - kolmogorov_cdf(r.statistic / (2.0 * p.sigma));
      }
      return r;
    case CpMethod::BootstrapHat:
    case CpMethod::BootstrapCheck: {
      if (replicates == 0) {
        throw ArgumentError("replicate count M must be >= 1");
      }
      if (replicates < 100) {
        r.warnings.emplace_back("fewer than 100 bootstrap replicates; p-value is coarse");
      }
      const MultiplierConfig config{n, p.ell, replicates, seed};
      if (auto warning = validate(config); !warning.empty()) {
        r.warnings.push_back(std::move(warning));
      }
      const BootstrapMethod bm =
          method == CpMethod::BootstrapHat ? BootstrapMethod::Hat : BootstrapMethod::Check;
      const std::vector<double> stats = replicate_dn_stats(table, config, bm, options.threads);
      const auto exceed = std::count_if(stats.begin(), stats.end(), [&](double s) { return s >= r.statistic; });
      r.replicates = replicates;
      r.p_value = static_cast<double>(exceed) / static_cast<double>(replicates);
      return r;
    }
  }
  throw ArgumentError("unknown change-point method");
}

CpTestResult cp_test(const Sample& sample, const Kernel& kernel, CpMethod method, std::size_t replicates,
                     std::uint64_t seed, const InferenceOptions& options) {
  kernel.check_dim(sample.dim());
  TableOptions table_options = options.table;
  // The asymptotic test never touches individual kernel values.
  if (method == CpMethod::Asymptotic && table_options.policy == StoragePolicy::Auto) {
    table_options.policy = StoragePolicy::Streaming;
  }
  return cp_test(PrefixTable::build(sample, kernel, table_options), method, replicates, seed, options);
}

}  // namespace ustatboot
