// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "naive.hpp"
#include "ustatboot/bandwidth.hpp"
#include "ustatboot/datagen.hpp"
#include "ustatboot/distributions.hpp"
#include "ustatboot/inference.hpp"
#include "ustatboot/monte_carlo.hpp"
#include "ustatboot/multiplier.hpp"
#include "ustatboot/parallel.hpp"
#include "ustatboot/process.hpp"
#include "ustatboot/replicates.hpp"

using namespace ustatboot;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double percent_of(const McResult& r, const std::string& method) {
  for (const auto& m : r.methods) {
    if (m.method == method) {
      return m.percent;
    }
  }
  return std::nan("");
}

McConfig coverage_config(std::size_t n, double zeta) {
  McConfig c;
  c.mode = McMode::Coverage;
  c.dgp.n = n;
  c.dgp.model = Ar1{zeta};
  c.dgp.innovations = UnivariateInnovation::Normal;
  c.kernel = Kernel::variance();
  c.reps = 500;
  c.replicates = 1000;
  c.alpha = 0.05;
  c.seed = 1;
  return c;
}

McConfig cp_config(McMode mode, std::size_t n, CopulaSpec before, CopulaSpec after, double t, double zeta) {
  McConfig c;
  c.mode = mode;
  c.dgp.n = n;
  c.dgp.model = Ar1{zeta};
  c.dgp.innovations = CopulaInnovations{before, after, t};
  c.kernel = Kernel::kendall();
  c.replicates = 1000;
  c.alpha = 0.05;
  c.seed = 1;
  return c;
}

// Coverage of both intervals, variance kernel, Gaussian AR(1).
void criterion1(Verdict& v) {
  struct Cell {
    std::size_t n;
    double zeta;
    double ci1;
    double ci2;
  };
  for (const Cell& cell : {Cell{100, 0.5, 89.4, 89.9}, Cell{200, 0.0, 93.9, 94.1}}) {
    const McResult r = run_monte_carlo(coverage_config(cell.n, cell.zeta));
    const double ci1 = percent_of(r, "CI1");
    const double ci2 = percent_of(r, "CI2");
    v.detail << " n=" << cell.n << " zeta=" << cell.zeta << ": CI1 " << fmt(ci1, 1) << " (reference " << cell.ci1
             << "), CI2 " << fmt(ci2, 1) << " (reference " << cell.ci2 << ");";
    v.require(std::fabs(ci1 - cell.ci1) <= 4.0, "CI1 n=" + std::to_string(cell.n));
    v.require(std::fabs(ci2 - cell.ci2) <= 4.0, "CI2 n=" + std::to_string(cell.n));
  }
}

// Level under the null, Clayton tau = 0.1.
void criterion2(Verdict& v) {
  McConfig c = cp_config(McMode::CpLevel, 200, {CopulaFamily::Clayton, 0.1}, {CopulaFamily::Clayton, 0.1}, 0.5, 0.0);
  c.reps = 500;
  const McResult r = run_monte_carlo(c);
  const double check = percent_of(r, "check");
  const double asym = percent_of(r, "asymptotic");
  v.detail << " check " << fmt(check, 1) << " (reference 6.4), asymptotic " << fmt(asym, 1) << " (reference 5.0)";
  v.require(std::fabs(check - 6.4) <= 3.0, "check");
  v.require(std::fabs(asym - 5.0) <= 3.0, "asymptotic");
}

// Power shape: power grows with n and with the size of the break.
void criterion3(Verdict& v) {
  const CopulaSpec start{CopulaFamily::GumbelHougaard, 0.2};
  std::vector<double> strong;
  std::vector<double> weak;
  for (std::size_t n : {50u, 100u, 200u}) {
    McConfig c = cp_config(McMode::CpPower, n, start, {CopulaFamily::GumbelHougaard, 0.6}, 0.25, 0.0);
    c.reps = 300;
    strong.push_back(percent_of(run_monte_carlo(c), "check"));
    c.dgp.innovations = CopulaInnovations{start, {CopulaFamily::GumbelHougaard, 0.4}, 0.25};
    weak.push_back(percent_of(run_monte_carlo(c), "check"));
  }
  v.detail << " 0.2->0.6: " << fmt(strong[0], 1) << " / " << fmt(strong[1], 1) << " / " << fmt(strong[2], 1)
           << " (reference 30.7 / 60.4 / 93.5); 0.2->0.4: " << fmt(weak[0], 1) << " / " << fmt(weak[1], 1) << " / "
           << fmt(weak[2], 1);
  v.require(strong[0] < strong[1] && strong[1] < strong[2], "monotone in n");
  for (std::size_t i = 0; i < 3; ++i) {
    v.require(strong[i] > weak[i], "larger break dominates at index " + std::to_string(i));
  }
}

// Incremental evaluation against direct summation.
void criterion4(Verdict& v) {
  std::mt19937_64 rng(20240604);
  std::uniform_int_distribution<std::size_t> size(4, 30);
  std::normal_distribution<double> z;
  const Kernel kernels[] = {Kernel::variance(), Kernel::gini(), Kernel::kendall()};
  double worst = 0.0;
  std::size_t comparisons = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const Kernel& kernel = kernels[instance % 3];
    const std::size_t n = size(rng);
    const std::size_t d = kernel.kind() == KernelKind::Kendall ? 1 + instance % 3 : 1;
    const Sample x = naive::random_sample(rng, n, d);
    std::vector<double> xi(n);
    for (double& e : xi) e = z(rng);
    const auto policy = instance % 2 == 0 ? StoragePolicy::Dense : StoragePolicy::Streaming;
    const auto t = PrefixTable::build(x, kernel, {4096, policy});
    auto record = [&](const std::vector<double>& a, const std::vector<double>& b) {
      worst = std::max(worst, naive::rel_diff(a, b));
      ++comparisons;
    };
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t l = k; l <= n; ++l) {
        record({u_statistic(t, k, l)}, {naive::u(x, kernel, k, l)});
        std::vector<double> ref(l - k + 1);
        for (std::size_t i = k; i <= l; ++i) ref[i - k] = naive::hat(x, kernel, k, l, i);
        record(pseudo_obs(t, k, l), ref);
      }
    }
    const double theta = z(rng);
    record(process_un(t, theta).values, naive::un(x, kernel, theta));
    record(process_dn(t).values, naive::dn(x, kernel));
    for (auto method : {BootstrapMethod::Hat, BootstrapMethod::Check}) {
      const bool check = method == BootstrapMethod::Check;
      record(replicate_un(t, xi, method).values, naive::rep_un(x, kernel, xi, check));
      record(replicate_un_star(t, xi, method).values, naive::rep_un_star(x, kernel, xi, check));
      record(replicate_dn(t, xi, method).values, naive::rep_dn(x, kernel, xi, check));
    }
  }
  v.detail << " 200 instances, " << comparisons << " comparisons, worst relative error " << worst;
  v.require(worst <= 1e-10, "tolerance 1e-10");
}

// Algebraic identities.
void criterion5(Verdict& v) {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  double pseudo_sum = 0.0;
  double check_unit = 0.0;
  double terminal = 0.0;
  for (const Kernel& kernel : {Kernel::variance(), Kernel::gini(), Kernel::kendall()}) {
    const std::size_t d = kernel.kind() == KernelKind::Kendall ? 2 : 1;
    for (std::size_t n : {8u, 25u, 60u}) {
      const Sample x = naive::random_sample(rng, n, d);
      const auto t = PrefixTable::build(x, kernel);
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t l = k; l <= n; ++l) {
          const auto h = pseudo_obs(t, k, l);
          pseudo_sum = std::max(pseudo_sum, std::fabs(std::accumulate(h.begin(), h.end(), 0.0)));
        }
      }
      const std::vector<double> ones(n, 1.0);
      for (const auto& path : {replicate_un(t, ones, BootstrapMethod::Check),
                               replicate_un_star(t, ones, BootstrapMethod::Check),
                               replicate_dn(t, ones, BootstrapMethod::Check)}) {
        for (double e : path.values) check_unit = std::max(check_unit, std::fabs(e));
      }
      std::vector<double> xi(n);
      for (double& e : xi) e = z(rng);
      const double a = replicate_un(t, xi, BootstrapMethod::Hat).values[n];
      const double b = replicate_un(t, xi, BootstrapMethod::Check).values[n];
      terminal = std::max(terminal, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
    }
  }
  double min_lrv = 0.0;
  std::uniform_int_distribution<std::size_t> len(2, 200);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = len(rng);
    std::vector<double> y(n);
    for (double& e : y) e = trial % 2 == 0 ? z(rng) : (unif(rng) > 0 ? 1.0 : -1.0);
    std::uniform_int_distribution<std::size_t> ell(1, 2 * n);
    min_lrv = std::min(min_lrv, longrun_variance(y, ell(rng)));
  }
  // Kendall outputs under increasing margin maps.
  const Sample x = naive::random_sample(rng, 80, 2);
  std::vector<double> mapped(x.values().begin(), x.values().end());
  for (std::size_t i = 0; i < mapped.size(); i += 2) {
    mapped[i] = std::exp(mapped[i]);
    mapped[i + 1] = std::atan(mapped[i + 1]) * 5.0 + 1.0;
  }
  const Sample y(80, 2, std::move(mapped));
  const auto tx = PrefixTable::build(x, Kernel::kendall());
  const auto ty = PrefixTable::build(y, Kernel::kendall());
  bool invariant = u_statistic(tx, 1, 80) == u_statistic(ty, 1, 80) && pseudo_obs(tx) == pseudo_obs(ty) &&
                   process_dn(tx).values == process_dn(ty).values;
  const auto cx = cp_test(x, Kernel::kendall(), CpMethod::BootstrapCheck, 300, 5);
  const auto cy = cp_test(y, Kernel::kendall(), CpMethod::BootstrapCheck, 300, 5);
  invariant = invariant && cx.p_value == cy.p_value && cx.statistic == cy.statistic;

  v.detail << " max |sum pseudo-obs| " << pseudo_sum << ", max |check replicate| under xi=1 " << check_unit
           << ", max |hat(1)-check(1)| " << terminal << ", min longrun_variance " << min_lrv
           << ", kendall invariant " << (invariant ? "yes" : "no");
  v.require(pseudo_sum <= 1e-10, "pseudo-observation sums");
  v.require(check_unit <= 1e-10, "check replicates under unit multipliers");
  v.require(terminal <= 1e-10, "hat(1) = check(1)");
  v.require(min_lrv >= 0.0, "longrun_variance >= 0");
  v.require(invariant, "kendall invariance");
}

// Multiplier moments and dependence.
void criterion6(Verdict& v) {
  const std::size_t n = 1000000;
  for (std::size_t ell : {1u, 5u, 20u}) {
    const auto batch = gen_multipliers({n, ell, 1, 600 + ell});
    const auto xi = batch.row(0);
    const double mean = std::accumulate(xi.begin(), xi.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double e : xi) var += (e - mean) * (e - mean);
    var /= static_cast<double>(n);
    const auto rho = weight_autocorrelation(ell);
    double worst_lag = 0.0;
    for (std::size_t k = 1; k < rho.size() + 2; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i + k < n; ++i) acc += (xi[i] - mean) * (xi[i + k] - mean);
      const double emp = acc / static_cast<double>(n) / var;
      const double exact = k < rho.size() ? rho[k] : 0.0;
      worst_lag = std::max(worst_lag, std::fabs(emp - exact));
    }
    // Standard error of the mean under the exact multiplier dependence, for context.
    double lrv = rho[0];
    for (std::size_t k = 1; k < rho.size(); ++k) lrv += 2.0 * rho[k];
    const double z_dep = mean / std::sqrt(lrv / static_cast<double>(n));
    v.detail << " ell=" << ell << ": mean " << fmt(mean, 5) << " (" << fmt(z_dep, 2) << " dependence-adjusted SE), var "
             << fmt(var, 4) << ", lag error " << fmt(worst_lag, 4) << ";";
    v.require(std::fabs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)), "mean ell=" + std::to_string(ell));
    v.require(std::fabs(var - 1.0) <= 0.01, "variance ell=" + std::to_string(ell));
    v.require(worst_lag <= 0.01, "lag correlations ell=" + std::to_string(ell));
    if (ell == 1) {
      std::vector<double> sorted(xi.begin(), xi.end());
      std::sort(sorted.begin(), sorted.end());
      double ks = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double f = normal_cdf(sorted[i]);
        ks = std::max({ks, std::fabs(f - static_cast<double>(i) / n), std::fabs(f - static_cast<double>(i + 1) / n)});
      }
      double m3 = 0.0;
      double m4 = 0.0;
      for (double e : xi) {
        const double c = (e - mean) / std::sqrt(var);
        m3 += c * c * c;
        m4 += c * c * c * c;
      }
      m3 /= static_cast<double>(n);
      m4 /= static_cast<double>(n);
      v.detail << " normality: KS " << fmt(ks, 5) << ", skew " << fmt(m3, 4) << ", kurtosis " << fmt(m4, 4) << ";";
      // 1% KS critical value is 1.63 / sqrt(n).
      v.require(ks < 1.63 / std::sqrt(static_cast<double>(n)), "normality KS");
      v.require(std::fabs(m3) < 0.02 && std::fabs(m4 - 3.0) < 0.04, "normality moments");
    }
  }
}

// S_n / (2 sigma-hat) under the null against F_K.
void criterion7(Verdict& v) {
  const std::size_t n = 1000;
  const std::size_t reps = 2000;
  std::vector<double> ratio(reps);
  parallel_for(reps, 0, [&](std::size_t r) {
    Engine engine = substream(7, r, StreamTag::Data);
    std::normal_distribution<double> z;
    std::vector<double> x(n);
    for (double& e : x) e = z(engine);
    InferenceOptions options;
    options.threads = 1;
    options.table.policy = StoragePolicy::Streaming;
    const auto res = cp_test(Sample::from_column(std::move(x)), Kernel::variance(), CpMethod::Asymptotic, 0, 0,
                             options);
    ratio[r] = res.statistic / (2.0 * res.sigma_hat);
  });
  std::sort(ratio.begin(), ratio.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < reps; ++i) {
    const double f = kolmogorov_cdf(ratio[i]);
    ks = std::max({ks, std::fabs(f - static_cast<double>(i) / reps), std::fabs(f - static_cast<double>(i + 1) / reps)});
  }
  v.detail << " KS distance " << fmt(ks, 4) << " over " << reps << " reps (n = " << n << ")";
  v.require(ks < 0.05, "KS < 0.05");
}

void criterion8(Verdict& v) {
  const double at = kolmogorov_cdf(1.3581);
  bool monotone = true;
  double prev = kolmogorov_cdf(0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double cur = kolmogorov_cdf(i * 5e-4);
    monotone = monotone && cur >= prev;
    prev = cur;
  }
  v.detail << " F_K(1.3581) = " << fmt(at, 6) << ", monotone on [0, 5] " << (monotone ? "yes" : "no")
           << ", F_K(5) = " << fmt(prev, 12);
  v.require(std::fabs(at - 0.95) <= 1e-3, "F_K(1.3581)");
  v.require(monotone, "monotone");
}

// Growth rate of the selected bandwidth.
void criterion9(Verdict& v) {
  const std::size_t sizes[] = {250, 1000, 4000};
  const std::size_t seeds = 100;
  std::vector<double> log_n;
  std::vector<double> log_ell;
  for (std::size_t n : sizes) {
    std::vector<double> ell(seeds);
    parallel_for(seeds, 0, [&](std::size_t s) {
      DgpConfig dgp;
      dgp.n = n;
      dgp.model = Ar1{0.5};
      const Sample x = generate(dgp, 9000 + s);
      const auto t = PrefixTable::build(x, Kernel::variance(), {4096, StoragePolicy::Streaming});
      ell[s] = static_cast<double>(estimate_bandwidth(pseudo_obs(t)).ell_opt);
    });
    const double mean = std::accumulate(ell.begin(), ell.end(), 0.0) / static_cast<double>(seeds);
    v.detail << " n=" << n << ": mean ell " << fmt(mean, 2) << ";";
    log_n.push_back(std::log(static_cast<double>(n)));
    log_ell.push_back(std::log(mean));
  }
  const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / 3.0;
  const double my = std::accumulate(log_ell.begin(), log_ell.end(), 0.0) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (log_n[i] - mx) * (log_ell[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = sxy / sxx;
  v.detail << " log-log slope " << fmt(slope, 3);
  v.require(std::fabs(slope - 0.2) <= 0.15, "slope 0.2 +- 0.15");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Verdict&)>> criteria{criterion1, criterion2, criterion3,
                                                            criterion4, criterion5, criterion6,
                                                            criterion7, criterion8, criterion9};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::atoi(argv[i]));
  }
  int failures = 0;
  for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) {
    if (!selected.empty() && selected.count(c) == 0) {
      continue;
    }
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[c - 1](v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s:%s (%.1fs)\n", c, v.pass ? "PASS" : "FAIL", v.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
