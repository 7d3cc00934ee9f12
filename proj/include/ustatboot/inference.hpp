#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ustatboot/bandwidth.hpp"
#include "ustatboot/kernel.hpp"
#include "ustatboot/prefix_table.hpp"
#include "ustatboot/replicates.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

struct InferenceOptions {
  /// Fixed multiplier bandwidth; bypasses estimate_bandwidth when set.
  std::optional<std::size_t> ell;
  unsigned threads = 0;
  TableOptions table;
};

enum class IntervalMethod { Asymptotic, Bootstrap };

struct CIResult {
  double estimate = 0.0;  ///< U_{h,1:n}
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.05;
  IntervalMethod method = IntervalMethod::Asymptotic;
  std::optional<BandwidthDiagnostics> bandwidth;  ///< absent when ell was fixed by the caller
  std::size_t ell = 1;          ///< bandwidth actually used
  double sigma_hat = 0.0;       ///< long-run sd of the pseudo-observations
  std::size_t replicates = 0;   ///< M, bootstrap only
  bool degenerate = false;
  std::vector<std::string> warnings;
};

enum class CpMethod { Asymptotic, BootstrapHat, BootstrapCheck };

struct CpTestResult {
  double statistic = 0.0;  ///< S_n
  double p_value = 1.0;
  CpMethod method = CpMethod::BootstrapCheck;
  double sigma_hat = 0.0;
  std::size_t replicates = 0;
  std::size_t change_point = 0;  ///< argmax_k |D_n(k/n)|, ties to the smallest k
  std::optional<BandwidthDiagnostics> bandwidth;
  std::size_t ell = 1;
  bool degenerate = false;
  std::vector<std::string> warnings;
};

/// CI_1: U +- z_{1 - alpha/2} n^{-1/2} 2 sigma-hat.
CIResult ci_asymptotic(const PrefixTable& table, double alpha, const InferenceOptions& options = {});
CIResult ci_asymptotic(const Sample& sample, const Kernel& kernel, double alpha,
                       const InferenceOptions& options = {});

/// Order-statistic indices (1-based) used by ci_bootstrap:
/// {ceil((alpha/2)(M+1)), floor((1-alpha/2)(M+1))}, clamped to [1, M].
std::pair<std::size_t, std::size_t> bootstrap_quantile_indices(double alpha, std::size_t replicates);

/// CI_2: basic multiplier bootstrap interval from the order statistics of
/// the replicates hat U_n^{(m)}(1).
CIResult ci_bootstrap(const PrefixTable& table, double alpha, std::size_t replicates, std::uint64_t seed,
                      const InferenceOptions& options = {});
CIResult ci_bootstrap(const Sample& sample, const Kernel& kernel, double alpha, std::size_t replicates,
                      std::uint64_t seed, const InferenceOptions& options = {});

/// Change-point test based on S_n = sup |D_n|.
///  - Asymptotic: p = 1 - F_K(S_n / (2 sigma-hat)).
///  - Bootstrap:  p = M^-1 #{m : S_n^{(m)} >= S_n}.
CpTestResult cp_test(const PrefixTable& table, CpMethod method, std::size_t replicates, std::uint64_t seed,
                     const InferenceOptions& options = {});
CpTestResult cp_test(const Sample& sample, const Kernel& kernel, CpMethod method, std::size_t replicates,
                     std::uint64_t seed, const InferenceOptions& options = {});

}  // namespace ustatboot
