#include "ustatboot/replicates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ustatboot/error.hpp"
#include "ustatboot/parallel.hpp"

namespace ustatboot {

namespace {

// Replicates are processed in fixed-width chunks so that per-replicate
// arithmetic never depends on the worker count.
constexpr std::size_t kChunkWidth = 64;

enum class PathKind { Un, UnStar, Dn };

// Per-table quantities shared by all replicates.
struct TableSummary {
  std::size_t n = 0;
  double scale = 0.0;               // 2 / sqrt(n)
  std::vector<double> hat;          // hat h_{1,1:n}(X_i), i = 1..n (0-based storage)
  std::vector<double> u_prefix;     // U_{h,1:k}, k = 0..n
  std::vector<double> u_suffix;     // U_{h,k+1:n}, k = 0..n
  std::vector<double> row_lower;    // sum_{j < i} h_ij
  std::vector<double> row_upper;    // sum_{j > i} h_ij
};

TableSummary summarize(const PrefixTable& table) {
  TableSummary s;
  s.n = table.size();
  s.scale = 2.0 / std::sqrt(static_cast<double>(s.n));
  s.hat = pseudo_obs(table);
  s.u_prefix.assign(s.n + 1, 0.0);
  s.u_suffix.assign(s.n + 1, 0.0);
  s.row_lower.resize(s.n);
  s.row_upper.resize(s.n);
  for (std::size_t k = 2; k <= s.n; ++k) {
    s.u_prefix[k] = u_statistic(table, 1, k);
  }
  for (std::size_t k = 0; k + 2 <= s.n; ++k) {
    s.u_suffix[k] = u_statistic(table, k + 1, s.n);
  }
  for (std::size_t i = 1; i <= s.n; ++i) {
    s.row_lower[i - 1] = table.row_lower(i);
    s.row_upper[i - 1] = table.row_upper(i);
  }
  return s;
}

struct Workspace {
  std::vector<double> xi_t;   // n x W, row i holds xi_i for each replicate
  std::vector<double> lower;  // n x W, sum_{i < k} h_ik xi_i
  std::vector<double> upper;  // n x W, sum_{j > k} h_kj xi_j
  std::vector<double> row;    // n, kernel row scratch
  std::vector<double> un;     // n + 1
  std::vector<double> un_star;
  std::vector<double> path;
};

// Weighted kernel sums for the check method over a chunk of W replicates.
void accumulate_weighted_sums(const PrefixTable& table, std::span<const std::span<const double>> rows,
                              bool need_lower, bool need_upper, Workspace& ws) {
  const std::size_t n = table.size();
  const std::size_t width = rows.size();
  ws.xi_t.resize(n * width);
  for (std::size_t w = 0; w < width; ++w) {
    for (std::size_t i = 0; i < n; ++i) {
      ws.xi_t[i * width + w] = rows[w][i];
    }
  }
  ws.lower.assign(need_lower ? n * width : 0, 0.0);
  ws.upper.assign(need_upper ? n * width : 0, 0.0);
  if (!table.dense()) {
    ws.row.resize(n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double* h = nullptr;
    if (table.dense()) {
      h = table.kernel_row(k + 1).data();
    } else {
      table.fill_kernel_row(k + 1, ws.row);
      h = ws.row.data();
    }
    if (need_lower) {
      double* out = ws.lower.data() + k * width;
      for (std::size_t i = 0; i < k; ++i) {
        const double hv = h[i];
        const double* x = ws.xi_t.data() + i * width;
        for (std::size_t w = 0; w < width; ++w) {
          out[w] += hv * x[w];
        }
      }
    }
    if (need_upper) {
      double* out = ws.upper.data() + k * width;
      for (std::size_t j = k + 1; j < n; ++j) {
        const double hv = h[j];
        const double* x = ws.xi_t.data() + j * width;
        for (std::size_t w = 0; w < width; ++w) {
          out[w] += hv * x[w];
        }
      }
    }
  }
}

void fill_un(const TableSummary& s, std::span<const double> xi, BootstrapMethod method, const Workspace& ws,
             std::size_t w, std::size_t width, std::vector<double>& out) {
  const std::size_t n = s.n;
  out.assign(n + 1, 0.0);
  if (method == BootstrapMethod::Hat) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += xi[k - 1] * s.hat[k - 1];
      out[k] = s.scale * acc;
    }
    return;
  }
  // A(k) = sum_{i <= k} xi_i R_i(k) = sum_{i < j <= k} h_ij (xi_i + xi_j).
  double weighted = 0.0;
  double xi_sum = xi[0];
  for (std::size_t k = 2; k <= n; ++k) {
    const double xk = xi[k - 1];
    weighted += ws.lower[(k - 1) * width + w] + xk * s.row_lower[k - 1];
    xi_sum += xk;
    out[k] = s.scale * (weighted / static_cast<double>(k - 1) - s.u_prefix[k] * xi_sum);
  }
}

void fill_un_star(const TableSummary& s, std::span<const double> xi, BootstrapMethod method,
                  const Workspace& ws, std::size_t w, std::size_t width, std::vector<double>& out) {
  const std::size_t n = s.n;
  out.assign(n + 1, 0.0);
  if (method == BootstrapMethod::Hat) {
    double acc = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      acc += xi[k] * s.hat[k];
      out[k] = s.scale * acc;
    }
    return;
  }
  // B(k) = sum_{i > k} xi_i T_i(k) = sum_{k < i < j <= n} h_ij (xi_i + xi_j).
  // The single-point suffix k = n - 1 contributes 0 by convention.
  double weighted = 0.0;
  double xi_sum = xi[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    const double xk = xi[k];
    weighted += ws.upper[k * width + w] + xk * s.row_upper[k];
    xi_sum += xk;
    out[k] = s.scale * (weighted / static_cast<double>(n - k - 1) - s.u_suffix[k] * xi_sum);
  }
}

// Evaluates one chunk and hands each replicate's path to `sink(w, path)`.
template <class Sink>
void evaluate_chunk(const PrefixTable& table, const TableSummary& s, std::span<const std::span<const double>> rows,
                    PathKind kind, BootstrapMethod method, Workspace& ws, Sink&& sink) {
  const std::size_t n = s.n;
  const std::size_t width = rows.size();
  const bool need_prefix = kind != PathKind::UnStar;
  const bool need_suffix = kind != PathKind::Un;
  if (method == BootstrapMethod::Check) {
    accumulate_weighted_sums(table, rows, need_prefix, need_suffix, ws);
  }
  const double nd = static_cast<double>(n);
  for (std::size_t w = 0; w < width; ++w) {
    if (need_prefix) {
      fill_un(s, rows[w], method, ws, w, width, ws.un);
    }
    if (need_suffix) {
      fill_un_star(s, rows[w], method, ws, w, width, ws.un_star);
    }
    switch (kind) {
      case PathKind::Un:
        sink(w, std::span<const double>(ws.un));
        break;
      case PathKind::UnStar:
        sink(w, std::span<const double>(ws.un_star));
        break;
      case PathKind::Dn:
        ws.path.assign(n + 1, 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
          const double left = static_cast<double>(k) / nd;
          const double right = static_cast<double>(n - k) / nd;
          ws.path[k] = right * ws.un[k] - left * ws.un_star[k];
        }
        sink(w, std::span<const double>(ws.path));
        break;
    }
  }
}

void check_row(const PrefixTable& table, std::span<const double> xi, std::size_t min_n) {
  if (table.size() < min_n) {
    throw SizeError("replicate requires n >= " + std::to_string(min_n));
  }
  if (xi.size() != table.size()) {
    throw ArgumentError("multiplier length " + std::to_string(xi.size()) + " does not match n = " +
                        std::to_string(table.size()));
  }
}

ProcessPath single_replicate(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method,
                             PathKind kind) {
  check_row(table, xi, kind == PathKind::Dn ? 4 : 2);
  const TableSummary s = summarize(table);
  Workspace ws;
  ProcessPath result;
  const std::span<const double> rows[1] = {xi};
  evaluate_chunk(table, s, rows, kind, method, ws, [&](std::size_t, std::span<const double> path) {
    result.values.assign(path.begin(), path.end());
  });
  return result;
}

double sup_over_support(std::span<const double> path) {
  const std::size_t n = path.size() - 1;
  double best = 0.0;
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    best = std::max(best, std::fabs(path[k]));
  }
  return best;
}

}  // namespace

ProcessPath replicate_un(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method) {
  return single_replicate(table, xi, method, PathKind::Un);
}

ProcessPath replicate_un_star(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method) {
  return single_replicate(table, xi, method, PathKind::UnStar);
}

ProcessPath replicate_dn(const PrefixTable& table, std::span<const double> xi, BootstrapMethod method) {
  return single_replicate(table, xi, method, PathKind::Dn);
}

ReplicateSet replicate_batch(const PrefixTable& table, const MultiplierBatch& batch, ProcessTarget target,
                             BootstrapMethod method, ReplicateOptions options) {
  const std::size_t n = table.size();
  if (batch.length() != n) {
    throw ArgumentError("multiplier batch length " + std::to_string(batch.length()) + " does not match n = " +
                        std::to_string(n));
  }
  const std::size_t min_n = target == ProcessTarget::Dn ? 4 : 2;
  if (n < min_n) {
    throw SizeError("replicate_batch requires n >= " + std::to_string(min_n));
  }
  const std::size_t count = batch.replicates();
  const PathKind kind = target == ProcessTarget::Dn ? PathKind::Dn : PathKind::Un;
  const TableSummary s = summarize(table);

  ReplicateSet set;
  set.method = method;
  set.target = target;
  if (options.keep_paths) {
    set.paths.resize(count);
  }
  if (target == ProcessTarget::Dn) {
    set.stats.resize(count);
  }
  const std::size_t chunks = (count + kChunkWidth - 1) / kChunkWidth;
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    const std::size_t first = c * kChunkWidth;
    const std::size_t last = std::min(count, first + kChunkWidth);
    std::vector<std::span<const double>> rows;
    rows.reserve(last - first);
    for (std::size_t m = first; m < last; ++m) {
      rows.push_back(batch.row(m));
    }
    Workspace ws;
    evaluate_chunk(table, s, rows, kind, method, ws, [&](std::size_t w, std::span<const double> path) {
      const std::size_t m = first + w;
      if (options.keep_paths) {
        set.paths[m].values.assign(path.begin(), path.end());
      }
      if (target == ProcessTarget::Dn) {
        set.stats[m] = sup_over_support(path);
      }
    });
  });
  return set;
}

std::vector<double> replicate_dn_stats(const PrefixTable& table, const MultiplierConfig& config,
                                       BootstrapMethod method, unsigned threads) {
  const std::size_t n = table.size();
  if (config.n != n) {
    throw ArgumentError("multiplier length does not match n");
  }
  if (n < 4) {
    throw SizeError("replicate_dn_stats requires n >= 4");
  }
  validate(config);
  const TableSummary s = summarize(table);
  const std::size_t count = config.replicates;
  std::vector<double> stats(count);
  const std::size_t chunks = (count + kChunkWidth - 1) / kChunkWidth;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t first = c * kChunkWidth;
    const std::size_t last = std::min(count, first + kChunkWidth);
    std::vector<double> buffer((last - first) * n);
    std::vector<std::span<const double>> rows;
    rows.reserve(last - first);
    for (std::size_t m = first; m < last; ++m) {
      std::span<double> row(buffer.data() + (m - first) * n, n);
      generate_multiplier_row(config, m, row);
      rows.emplace_back(row);
    }
    Workspace ws;
    evaluate_chunk(table, s, rows, PathKind::Dn, method, ws, [&](std::size_t w, std::span<const double> path) {
      stats[first + w] = sup_over_support(path);
    });
  });
  return stats;
}

}  // namespace ustatboot
