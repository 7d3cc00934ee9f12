#include <cmath>
#include <random>

#include "doctest.h"
#include "naive.hpp"
#include "ustatboot/error.hpp"
#include "ustatboot/replicates.hpp"

using namespace ustatboot;

namespace {

std::vector<double> random_xi(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z;
  std::vector<double> xi(n);
  for (double& v : xi) v = z(rng);
  return xi;
}

}  // namespace

TEST_CASE("replicates match direct evaluation") {
  std::mt19937_64 rng(404);
  for (const Kernel& kernel : {Kernel::variance(), Kernel::gini(), Kernel::kendall()}) {
    for (std::size_t n : {4u, 5u, 9u, 20u}) {
      const std::size_t d = kernel.kind() == KernelKind::Kendall ? 2 : 1;
      const Sample x = naive::random_sample(rng, n, d);
      const auto xi = random_xi(rng, n);
      for (auto policy : {StoragePolicy::Dense, StoragePolicy::Streaming}) {
        const auto t = PrefixTable::build(x, kernel, {4096, policy});
        for (auto method : {BootstrapMethod::Hat, BootstrapMethod::Check}) {
          const bool check = method == BootstrapMethod::Check;
          CHECK(naive::rel_diff(replicate_un(t, xi, method).values, naive::rep_un(x, kernel, xi, check)) <= 1e-10);
          CHECK(naive::rel_diff(replicate_un_star(t, xi, method).values,
                                naive::rep_un_star(x, kernel, xi, check)) <= 1e-10);
          CHECK(naive::rel_diff(replicate_dn(t, xi, method).values, naive::rep_dn(x, kernel, xi, check)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("unit multipliers") {
  std::mt19937_64 rng(1);
  const Sample x = naive::random_sample(rng, 15, 1);
  const auto t = PrefixTable::build(x, Kernel::gini());
  const std::vector<double> ones(15, 1.0);
  for (double v : replicate_un(t, ones, BootstrapMethod::Check).values) CHECK(v == doctest::Approx(0.0).scale(1.0));
  for (double v : replicate_un_star(t, ones, BootstrapMethod::Check).values) {
    CHECK(v == doctest::Approx(0.0).scale(1.0));
  }
  for (double v : replicate_dn(t, ones, BootstrapMethod::Check).values) CHECK(v == doctest::Approx(0.0).scale(1.0));
  const auto hat = replicate_un(t, ones, BootstrapMethod::Hat).values;
  CHECK(hat[0] == 0.0);
  CHECK(hat[15] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("terminal values agree across methods") {
  std::mt19937_64 rng(2);
  const Sample x = naive::random_sample(rng, 30, 1);
  const auto t = PrefixTable::build(x, Kernel::variance());
  const auto xi = random_xi(rng, 30);
  const auto hat = replicate_un(t, xi, BootstrapMethod::Hat).values;
  const auto check = replicate_un(t, xi, BootstrapMethod::Check).values;
  CHECK(hat[30] == doctest::Approx(check[30]).epsilon(1e-12));
  CHECK(replicate_un_star(t, xi, BootstrapMethod::Check).values[30] == 0.0);
  const auto dn = replicate_dn(t, xi, BootstrapMethod::Hat).values;
  CHECK(dn[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(dn[30] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("replicates are linear in the multipliers") {
  std::mt19937_64 rng(3);
  const Sample x = naive::random_sample(rng, 25, 2);
  const auto t = PrefixTable::build(x, Kernel::kendall());
  const auto a = random_xi(rng, 25);
  const auto b = random_xi(rng, 25);
  std::vector<double> mix(25);
  for (std::size_t i = 0; i < 25; ++i) mix[i] = 2.5 * a[i] - 0.75 * b[i];
  for (auto method : {BootstrapMethod::Hat, BootstrapMethod::Check}) {
    const auto pa = replicate_dn(t, a, method).values;
    const auto pb = replicate_dn(t, b, method).values;
    const auto pm = replicate_dn(t, mix, method).values;
    for (std::size_t k = 0; k <= 25; ++k) {
      CHECK(pm[k] == doctest::Approx(2.5 * pa[k] - 0.75 * pb[k]).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("argument checks") {
  const auto t = PrefixTable::build(Sample::from_column({1, 2, 3}), Kernel::variance());
  CHECK_THROWS_AS(replicate_un(t, std::vector<double>(2, 1.0), BootstrapMethod::Hat), ArgumentError);
  CHECK_THROWS_AS(replicate_dn(t, std::vector<double>(3, 1.0), BootstrapMethod::Hat), SizeError);
  const auto batch = gen_multipliers(MultiplierConfig{4, 1, 2, 1}, 1);
  CHECK_THROWS_AS(replicate_batch(t, batch, ProcessTarget::Un, BootstrapMethod::Hat), ArgumentError);
}

TEST_CASE("batch, streamed statistics and single replicates agree") {
  std::mt19937_64 rng(4);
  const Sample x = naive::random_sample(rng, 60, 1);
  const auto t = PrefixTable::build(x, Kernel::variance());
  const MultiplierConfig config{60, 6, 150, 99};
  const auto batch = gen_multipliers(config, 2);
  for (auto method : {BootstrapMethod::Hat, BootstrapMethod::Check}) {
    const auto one = replicate_batch(t, batch, ProcessTarget::Dn, method, {true, 1});
    const auto many = replicate_batch(t, batch, ProcessTarget::Dn, method, {false, 3});
    CHECK(many.paths.empty());
    CHECK(one.stats == many.stats);
    CHECK(replicate_dn_stats(t, config, method, 2) == one.stats);
    for (std::size_t m : {0u, 63u, 64u, 149u}) {
      const auto single = replicate_dn(t, batch.row(m), method).values;
      CHECK(naive::max_abs_diff(single, one.paths[m].values) <= 1e-12);
      double sup = 0.0;
      for (std::size_t k = 2; k <= 58; ++k) sup = std::max(sup, std::fabs(single[k]));
      CHECK(one.stats[m] == doctest::Approx(sup).epsilon(1e-12));
    }
    const auto un = replicate_batch(t, batch, ProcessTarget::Un, method);
    CHECK(un.stats.empty());
    CHECK(naive::max_abs_diff(un.paths[5].values, replicate_un(t, batch.row(5), method).values) <= 1e-12);
  }
}

TEST_CASE("unit multiplier batch gives a zero statistic") {
  const auto t = PrefixTable::build(Sample::from_column({0.3, 1.2, -0.4, 2.2, 0.9}), Kernel::gini());
  const MultiplierBatch ones(MultiplierConfig{5, 1, 1, 0}, std::vector<double>(5, 1.0), {});
  const auto set = replicate_batch(t, ones, ProcessTarget::Dn, BootstrapMethod::Check);
  REQUIRE(set.stats.size() == 1);
  CHECK(set.stats[0] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("kendall replicates ignore increasing margin maps") {
  std::mt19937_64 rng(5);
  const Sample x = naive::random_sample(rng, 20, 2);
  std::vector<double> y(x.values().begin(), x.values().end());
  for (double& v : y) v = std::atan(v) * 3.0 + 1.0;
  const auto a = PrefixTable::build(x, Kernel::kendall());
  const auto b = PrefixTable::build(Sample(20, 2, y), Kernel::kendall());
  const auto xi = random_xi(rng, 20);
  CHECK(replicate_dn(a, xi, BootstrapMethod::Check).values == replicate_dn(b, xi, BootstrapMethod::Check).values);
  CHECK(replicate_dn(a, xi, BootstrapMethod::Hat).values == replicate_dn(b, xi, BootstrapMethod::Hat).values);
}
