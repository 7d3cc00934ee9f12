#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ustatboot/bandwidth.hpp"
#include "ustatboot/distributions.hpp"
#include "ustatboot/error.hpp"
#include "ustatboot/inference.hpp"
#include "ustatboot/monte_carlo.hpp"
#include "ustatboot/multiplier.hpp"
#include "ustatboot/process.hpp"
#include "ustatboot/rng.hpp"

namespace py = pybind11;
using namespace ustatboot;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Sample to_sample(const Array& data) {
  if (data.ndim() == 1) {
    return Sample(static_cast<std::size_t>(data.shape(0)), 1,
                  std::vector<double>(data.data(), data.data() + data.size()));
  }
  if (data.ndim() == 2) {
    return Sample(static_cast<std::size_t>(data.shape(0)), static_cast<std::size_t>(data.shape(1)),
                  std::vector<double>(data.data(), data.data() + data.size()));
  }
  throw ArgumentError("data must be 1-d or 2-d");
}

std::vector<double> to_vector(const Array& values) {
  if (values.ndim() != 1) {
    throw ArgumentError("expected a 1-d array");
  }
  return {values.data(), values.data() + values.size()};
}

Kernel to_kernel(const std::string& name) {
  auto kernel = kernel_from_name(name);
  if (!kernel) {
    throw ArgumentError("unknown kernel '" + name + "'");
  }
  return *kernel;
}

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict bandwidth_dict(const BandwidthDiagnostics& bw) {
  py::dict d;
  d["lag_cutoff"] = bw.lag_cutoff;
  d["window"] = bw.window;
  d["gamma_hat"] = to_array(bw.gamma_hat);
  d["bias_constant"] = bw.bias_constant;
  d["variance_constant"] = bw.variance_constant;
  d["ell_real"] = bw.ell_real;
  d["ell_opt"] = bw.ell_opt;
  return d;
}

py::object optional_bandwidth(const std::optional<BandwidthDiagnostics>& bw) {
  return bw ? py::object(bandwidth_dict(*bw)) : py::object(py::none());
}

InferenceOptions options(std::optional<std::size_t> ell, unsigned threads) {
  InferenceOptions o;
  o.ell = ell;
  o.threads = threads;
  return o;
}

py::dict ci(const Array& data, const std::string& kernel, double alpha, const std::string& method,
            std::size_t replicates, std::optional<std::uint64_t> seed, std::optional<std::size_t> ell,
            unsigned threads) {
  const Sample sample = to_sample(data);
  const Kernel k = to_kernel(kernel);
  CIResult r;
  py::object used_seed = py::none();
  if (method == "asymptotic") {
    py::gil_scoped_release release;
    r = ci_asymptotic(sample, k, alpha, options(ell, threads));
  } else if (method == "bootstrap") {
    const std::uint64_t s = seed.value_or(entropy_seed());
    used_seed = py::int_(s);
    py::gil_scoped_release release;
    r = ci_bootstrap(sample, k, alpha, replicates, s, options(ell, threads));
  } else {
    throw ArgumentError("method must be 'asymptotic' or 'bootstrap'");
  }
  py::dict d;
  d["estimate"] = r.estimate;
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["alpha"] = r.alpha;
  d["method"] = method;
  d["sigma_hat"] = r.sigma_hat;
  d["ell"] = r.ell;
  d["replicates"] = r.replicates;
  d["seed"] = used_seed;
  d["degenerate"] = r.degenerate;
  d["bandwidth"] = optional_bandwidth(r.bandwidth);
  d["warnings"] = r.warnings;
  return d;
}

py::dict cp(const Array& data, const std::string& kernel, const std::string& method, std::size_t replicates,
            std::optional<std::uint64_t> seed, std::optional<std::size_t> ell, unsigned threads) {
  const Sample sample = to_sample(data);
  const Kernel k = to_kernel(kernel);
  CpMethod m;
  if (method == "asymptotic") {
    m = CpMethod::Asymptotic;
  } else if (method == "hat") {
    m = CpMethod::BootstrapHat;
  } else if (method == "check") {
    m = CpMethod::BootstrapCheck;
  } else {
    throw ArgumentError("method must be 'asymptotic', 'hat' or 'check'");
  }
  py::object used_seed = py::none();
  std::uint64_t s = 0;
  if (m != CpMethod::Asymptotic) {
    s = seed.value_or(entropy_seed());
    used_seed = py::int_(s);
  }
  CpTestResult r;
  {
    py::gil_scoped_release release;
    r = cp_test(sample, k, m, replicates, s, options(ell, threads));
  }
  py::dict d;
  d["statistic"] = r.statistic;
  d["p_value"] = r.p_value;
  d["change_point"] = r.change_point;
  d["method"] = method;
  d["sigma_hat"] = r.sigma_hat;
  d["ell"] = r.ell;
  d["replicates"] = r.replicates;
  d["seed"] = used_seed;
  d["degenerate"] = r.degenerate;
  d["bandwidth"] = optional_bandwidth(r.bandwidth);
  d["warnings"] = r.warnings;
  return d;
}

DgpConfig dgp(std::size_t n, const std::string& model, double zeta, const std::string& innov,
              std::optional<std::string> copula, double tau, std::optional<double> tau2, double break_fraction,
              std::size_t burn_in) {
  DgpConfig c;
  c.n = n;
  c.burn_in = burn_in;
  if (model == "ar1") {
    c.model = Ar1{zeta};
  } else if (model == "garch") {
    c.model = Garch{};
  } else {
    throw ArgumentError("model must be 'ar1' or 'garch'");
  }
  if (copula) {
    CopulaFamily family;
    if (*copula == "clayton") {
      family = CopulaFamily::Clayton;
    } else if (*copula == "gumbel") {
      family = CopulaFamily::GumbelHougaard;
    } else {
      throw ArgumentError("copula must be 'clayton' or 'gumbel'");
    }
    c.innovations = CopulaInnovations{{family, tau}, {family, tau2.value_or(tau)}, break_fraction};
  } else if (innov == "normal") {
    c.innovations = UnivariateInnovation::Normal;
  } else if (innov == "t5") {
    c.innovations = UnivariateInnovation::StudentT5;
  } else {
    throw ArgumentError("innov must be 'normal' or 't5'");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dependent multiplier bootstrap for U-statistics";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  m.def(
      "u_statistic",
      [](const Array& data, const std::string& kernel) {
        const auto table = PrefixTable::build(to_sample(data), to_kernel(kernel));
        return u_statistic(table, 1, table.size());
      },
      py::arg("data"), py::arg("kernel") = "variance");

  m.def(
      "pseudo_observations",
      [](const Array& data, const std::string& kernel) {
        return to_array(pseudo_obs(PrefixTable::build(to_sample(data), to_kernel(kernel))));
      },
      py::arg("data"), py::arg("kernel") = "variance");

  m.def(
      "process_un",
      [](const Array& data, double theta, const std::string& kernel) {
        return to_array(process_un(PrefixTable::build(to_sample(data), to_kernel(kernel)), theta).values);
      },
      py::arg("data"), py::arg("theta"), py::arg("kernel") = "variance");

  m.def(
      "process_dn",
      [](const Array& data, const std::string& kernel) {
        return to_array(process_dn(PrefixTable::build(to_sample(data), to_kernel(kernel))).values);
      },
      py::arg("data"), py::arg("kernel") = "variance");

  m.def(
      "estimate_bandwidth", [](const Array& values) { return bandwidth_dict(estimate_bandwidth(to_vector(values))); },
      py::arg("values"));

  m.def(
      "longrun_variance",
      [](const Array& values, std::size_t ell) { return longrun_variance(to_vector(values), ell); },
      py::arg("values"), py::arg("ell"));

  m.def(
      "multipliers",
      [](std::size_t n, std::size_t ell, std::size_t replicates, std::uint64_t seed, unsigned threads) {
        const MultiplierBatch batch = gen_multipliers({n, ell, replicates, seed}, threads);
        py::array_t<double> out({replicates, n});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t r = 0; r < replicates; ++r) {
          const auto row = batch.row(r);
          for (std::size_t i = 0; i < n; ++i) {
            view(r, i) = row[i];
          }
        }
        return out;
      },
      py::arg("n"), py::arg("ell"), py::arg("replicates"), py::arg("seed"), py::arg("threads") = 0,
      "Dependent multiplier sequences, one replicate per row.");

  m.def("ci", &ci, py::arg("data"), py::arg("kernel") = "variance", py::arg("alpha") = 0.05,
        py::arg("method") = "asymptotic", py::arg("M") = 1000, py::arg("seed") = py::none(),
        py::arg("ell") = py::none(), py::arg("threads") = 0, "Confidence interval for theta = E h(X, Y).");

  m.def("cp_test", &cp, py::arg("data"), py::arg("kernel") = "variance", py::arg("method") = "check",
        py::arg("M") = 1000, py::arg("seed") = py::none(), py::arg("ell") = py::none(), py::arg("threads") = 0,
        "Test for a change in theta based on sup |D_n|.");

  m.def(
      "generate",
      [](std::size_t n, const std::string& model, double zeta, const std::string& innov,
         std::optional<std::string> copula, double tau, std::optional<double> tau2, double break_fraction,
         std::size_t burn_in, std::uint64_t seed) {
        const Sample s = generate(dgp(n, model, zeta, innov, copula, tau, tau2, break_fraction, burn_in), seed);
        py::array_t<double> out({s.size(), s.dim()});
        std::copy(s.values().begin(), s.values().end(), out.mutable_data());
        return out;
      },
      py::arg("n"), py::arg("model") = "ar1", py::arg("zeta") = 0.0, py::arg("innov") = "normal",
      py::arg("copula") = py::none(), py::arg("tau") = 0.0, py::arg("tau2") = py::none(),
      py::arg("break_fraction") = 0.5, py::arg("burn_in") = 100, py::arg("seed") = 1,
      "Simulated AR1 or GARCH series, shape (n, d).");

  m.def(
      "simulate",
      [](const std::string& mode, std::size_t n, const std::string& model, double zeta, const std::string& innov,
         std::optional<std::string> copula, double tau, std::optional<double> tau2, double break_fraction,
         std::optional<std::string> kernel, double alpha, std::size_t reps, std::size_t replicates,
         std::uint64_t seed, std::optional<double> theta, bool include_hat, unsigned threads) {
        McConfig c;
        if (mode == "coverage") {
          c.mode = McMode::Coverage;
        } else if (mode == "cplevel") {
          c.mode = McMode::CpLevel;
        } else if (mode == "cppower") {
          c.mode = McMode::CpPower;
        } else {
          throw ArgumentError("mode must be 'coverage', 'cplevel' or 'cppower'");
        }
        c.dgp = dgp(n, model, zeta, innov, copula, tau, tau2, break_fraction, 100);
        c.kernel = to_kernel(kernel.value_or(copula ? "kendall" : "variance"));
        c.alpha = alpha;
        c.reps = reps;
        c.replicates = replicates;
        c.seed = seed;
        c.theta_truth = theta;
        c.include_hat = include_hat;
        c.threads = threads;
        McResult r;
        {
          py::gil_scoped_release release;
          r = run_monte_carlo(c);
        }
        py::dict d;
        for (const auto& method : r.methods) {
          d[py::str(method.method)] = method.percent;
          d[py::str(method.method + "_se")] = method.std_error;
        }
        d["theta_truth"] = r.theta_truth ? py::object(py::float_(*r.theta_truth)) : py::object(py::none());
        d["theta_source"] = r.theta_source;
        d["mean_ell"] = r.mean_ell;
        d["wall_seconds"] = r.seconds;
        return d;
      },
      py::arg("mode"), py::arg("n"), py::arg("model") = "ar1", py::arg("zeta") = 0.0, py::arg("innov") = "normal",
      py::arg("copula") = py::none(), py::arg("tau") = 0.0, py::arg("tau2") = py::none(),
      py::arg("break_fraction") = 0.5, py::arg("kernel") = py::none(), py::arg("alpha") = 0.05,
      py::arg("reps") = 100, py::arg("M") = 1000, py::arg("seed") = 1, py::arg("theta") = py::none(),
      py::arg("include_hat") = false, py::arg("threads") = 0,
      "Monte Carlo coverage or rejection percentages.");

  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("kolmogorov_cdf", &kolmogorov_cdf, py::arg("x"));
}
