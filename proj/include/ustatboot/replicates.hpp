#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ustatboot/multiplier.hpp"
#include "ustatboot/prefix_table.hpp"
#include "ustatboot/process.hpp"

namespace ustatboot {

/// Which pseudo-observations the replicates use.
///  - Hat:   full-sample pseudo-observations hat h_{1,1:n}.
///  - Check: window pseudo-observations (hat h_{1,1:k} for the prefix part,
///           hat h_{1,k+1:n} for the suffix part).
enum class BootstrapMethod { Hat, Check };

enum class ProcessTarget { Un, Dn };

/// Multiplier replicate of U_n: (2/sqrt n) sum_{i <= k} xi_i hat h_1(X_i).
ProcessPath replicate_un(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method);

/// Multiplier replicate of U_n^*: (2/sqrt n) sum_{i > k} xi_i hat h_1(X_i).
ProcessPath replicate_un_star(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method);

/// Multiplier replicate of D_n: ((n-k)/n) U-replicate(k) - (k/n) U*-replicate(k).
ProcessPath replicate_dn(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method);

struct ReplicateSet {
  BootstrapMethod method = BootstrapMethod::Check;
  ProcessTarget target = ProcessTarget::Dn;
  std::vector<ProcessPath> paths;  ///< empty when paths were not requested
  std::vector<double> stats;       ///< sup statistics, Dn targets only
};

struct ReplicateOptions {
  bool keep_paths = true;
  unsigned threads = 0;
};

/// Replicates for every multiplier row of `batch`. For Dn targets, stats[m] is
/// the sup of |path_m| over 2 <= k <= n - 2.
ReplicateSet replicate_batch(const PrefixTable& table, const MultiplierBatch& batch, ProcessTarget target,
                             BootstrapMethod method, ReplicateOptions options = {});

/// Sup statistics of D_n replicates for multiplier rows generated on the fly
/// from `config` (no M x n batch is materialized). Same values as
/// replicate_batch on gen_multipliers(config).
std::vector<double> replicate_dn_stats(const PrefixTable& table, const MultiplierConfig& config,
                                       BootstrapMethod method, unsigned threads = 0);

}  // namespace ustatboot
