#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ustatboot/error.hpp"
#include "ustatboot/inference.hpp"
#include "ustatboot/monte_carlo.hpp"
#include "ustatboot/rng.hpp"

namespace ustatboot::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kCiSchema = "ustatboot.ci/1";
constexpr const char* kCpSchema = "ustatboot.cp/1";
constexpr const char* kSimulateSchema = "ustatboot.simulate/1";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') {
    field.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    return std::nullopt;
  }
  return value;
}

struct Common {
  std::string kernel = "variance";
  std::string method;
  std::string format = "json";
  double alpha = 0.05;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  std::size_t ell = 0;
  unsigned threads = 0;
  std::string file;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* ell_opt = nullptr;
};

void add_output_options(CLI::App& app, Common& c) {
  app.add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (0: USTATBOOT_THREADS or all cores)");
}

void add_data_options(CLI::App& app, Common& c) {
  app.add_option("--kernel", c.kernel, "Kernel")
      ->check(CLI::IsMember({"variance", "gini", "kendall"}))
      ->capture_default_str();
  app.add_option("--M", c.replicates, "Bootstrap replicates")->capture_default_str();
  c.seed_opt = app.add_option("--seed", c.seed, "Random seed (drawn and reported when omitted)");
  c.ell_opt = app.add_option("--ell", c.ell, "Fixed multiplier bandwidth (skips bandwidth selection)")
                  ->check(CLI::PositiveNumber);
  app.add_option("FILE", c.file, "CSV input ('-' for stdin)")->required();
  add_output_options(app, c);
}

Kernel resolve_kernel(const std::string& name, std::size_t dim) {
  const auto kernel = kernel_from_name(name);
  if (!kernel) {
    throw ArgumentError("unknown kernel '" + name + "'");
  }
  if (kernel->kind() == KernelKind::Kendall && dim < 2) {
    throw ArgumentError("kernel kendall needs at least 2 columns, input has " + std::to_string(dim));
  }
  kernel->check_dim(dim);
  return *kernel;
}

Sample load(const std::string& path) {
  if (path == "-") {
    return read_csv(std::cin);
  }
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  return read_csv(in);
}

Json bandwidth_json(const std::optional<BandwidthDiagnostics>& bw) {
  if (!bw) {
    return nullptr;
  }
  return Json{{"lag_cutoff", bw->lag_cutoff},
              {"window", bw->window},
              {"gamma_hat", bw->gamma_hat},
              {"bias_constant", bw->bias_constant},
              {"variance_constant", bw->variance_constant},
              {"ell_real", bw->ell_real},
              {"ell_opt", bw->ell_opt}};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += (i ? ";" : "") + scalar_text(v[i]);
    }
    return s;
  }
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, out);
    } else {
      out.emplace_back(name, scalar_text(value));
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string q = "\"";
  for (char ch : s) {
    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  }
  return q + "\"";
}

void emit(const Json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  if (format == "text") {
    for (const auto& [k, v] : rows) {
      out << k << ": " << v << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << (i ? "," : "") << csv_field(rows[i].first);
  }
  out << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << (i ? "," : "") << csv_field(rows[i].second);
  }
  out << '\n';
}

std::uint64_t seed_of(const Common& c) { return c.seed_opt->count() > 0 ? c.seed : entropy_seed(); }

InferenceOptions inference_options(const Common& c) {
  InferenceOptions o;
  if (c.ell_opt->count() > 0) {
    o.ell = c.ell;
  }
  o.threads = c.threads;
  return o;
}

Json run_ci(const Common& c, std::ostream& err) {
  const Sample sample = load(c.file);
  const Kernel kernel = resolve_kernel(c.kernel, sample.dim());
  const InferenceOptions options = inference_options(c);
  const bool bootstrap = c.method == "bootstrap";
  std::optional<std::uint64_t> seed;
  CIResult r;
  if (bootstrap) {
    seed = seed_of(c);
    r = ci_bootstrap(sample, kernel, c.alpha, c.replicates, *seed, options);
  } else {
    r = ci_asymptotic(sample, kernel, c.alpha, options);
  }
  for (const auto& w : r.warnings) {
    err << "warning: " << w << '\n';
  }
  Json j;
  j["schema"] = kCiSchema;
  j["kernel"] = kernel.name();
  j["n"] = sample.size();
  j["d"] = sample.dim();
  j["method"] = bootstrap ? "bootstrap" : "asymptotic";
  j["alpha"] = c.alpha;
  j["estimate"] = r.estimate;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["sigma_hat"] = r.sigma_hat;
  j["ell"] = r.ell;
  j["ell_source"] = r.bandwidth ? "estimated" : "fixed";
  j["replicates"] = bootstrap ? Json(r.replicates) : Json(nullptr);
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["degenerate"] = r.degenerate;
  j["bandwidth"] = bandwidth_json(r.bandwidth);
  j["warnings"] = r.warnings;
  return j;
}

Json run_cp(const Common& c, std::ostream& err) {
  const Sample sample = load(c.file);
  const Kernel kernel = resolve_kernel(c.kernel, sample.dim());
  const InferenceOptions options = inference_options(c);
  CpMethod method = CpMethod::BootstrapCheck;
  if (c.method == "asymptotic") {
    method = CpMethod::Asymptotic;
  } else if (c.method == "hat") {
    method = CpMethod::BootstrapHat;
  }
  std::optional<std::uint64_t> seed;
  if (method != CpMethod::Asymptotic) {
    seed = seed_of(c);
  }
  const CpTestResult r = cp_test(sample, kernel, method, c.replicates, seed.value_or(0), options);
  for (const auto& w : r.warnings) {
    err << "warning: " << w << '\n';
  }
  Json j;
  j["schema"] = kCpSchema;
  j["kernel"] = kernel.name();
  j["n"] = sample.size();
  j["d"] = sample.dim();
  j["method"] = c.method;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["change_point"] = r.change_point;
  j["sigma_hat"] = r.sigma_hat;
  j["ell"] = r.ell;
  j["ell_source"] = r.bandwidth ? "estimated" : "fixed";
  j["replicates"] = seed ? Json(r.replicates) : Json(nullptr);
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["degenerate"] = r.degenerate;
  j["bandwidth"] = bandwidth_json(r.bandwidth);
  j["warnings"] = r.warnings;
  return j;
}

struct SimulateArgs {
  std::string mode;
  std::string model = "ar1";
  double zeta = 0.0;
  std::string innov = "normal";
  std::string copula;
  double tau = 0.0;
  double tau2 = 0.0;
  double break_fraction = 0.5;
  std::size_t n = 100;
  std::size_t reps = 100;
  std::size_t burn_in = 100;
  double theta = 0.0;
  bool hat = false;
  CLI::Option* kernel_opt = nullptr;
  CLI::Option* tau2_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
};

Json run_simulate(const Common& c, const SimulateArgs& s) {
  McConfig config;
  if (s.mode == "coverage") {
    config.mode = McMode::Coverage;
  } else if (s.mode == "cplevel") {
    config.mode = McMode::CpLevel;
  } else {
    config.mode = McMode::CpPower;
  }
  config.dgp.n = s.n;
  config.dgp.burn_in = s.burn_in;
  if (s.model == "ar1") {
    config.dgp.model = Ar1{s.zeta};
  } else {
    config.dgp.model = Garch{};
  }
  const bool bivariate = !s.copula.empty();
  if (bivariate) {
    const CopulaFamily family = s.copula == "clayton" ? CopulaFamily::Clayton : CopulaFamily::GumbelHougaard;
    double after = s.tau;
    if (s.tau2_opt->count() > 0) {
      if (config.mode == McMode::CpLevel && s.tau2 != s.tau) {
        throw ArgumentError("cplevel simulates under the null; --tau2 must equal --tau");
      }
      after = s.tau2;
    }
    config.dgp.innovations = CopulaInnovations{{family, s.tau}, {family, after}, s.break_fraction};
  } else {
    if (config.mode != McMode::Coverage) {
      throw ArgumentError("change-point simulations need bivariate innovations (--copula)");
    }
    config.dgp.innovations = s.innov == "t5" ? UnivariateInnovation::StudentT5 : UnivariateInnovation::Normal;
  }
  const std::string kernel_name = s.kernel_opt->count() > 0 ? c.kernel : (bivariate ? "kendall" : "variance");
  config.kernel = resolve_kernel(kernel_name, config.dgp.dim());
  config.reps = s.reps;
  config.replicates = c.replicates;
  config.alpha = c.alpha;
  config.include_hat = s.hat;
  config.threads = c.threads;
  if (s.theta_opt->count() > 0) {
    config.theta_truth = s.theta;
  }
  config.seed = seed_of(c);

  const McResult r = run_monte_carlo(config);

  Json row;
  row["mode"] = s.mode;
  row["model"] = s.model;
  row["zeta"] = s.model == "ar1" ? Json(s.zeta) : Json(nullptr);
  if (bivariate) {
    const auto& innov = std::get<CopulaInnovations>(config.dgp.innovations);
    row["copula"] = s.copula;
    row["tau"] = innov.before.tau;
    row["tau2"] = innov.after.tau;
    row["break"] = s.break_fraction;
  } else {
    row["innov"] = s.innov;
  }
  row["kernel"] = kernel_name;
  row["n"] = s.n;
  row["alpha"] = c.alpha;
  row["reps"] = s.reps;
  row["M"] = c.replicates;
  for (const auto& m : r.methods) {
    row[m.method] = m.percent;
    row[m.method + "_se"] = m.std_error;
  }

  Json j;
  j["schema"] = kSimulateSchema;
  j["config"] = row;
  Json methods = Json::array();
  for (const auto& m : r.methods) {
    methods.push_back(Json{{"method", m.method}, {"hits", m.hits}, {"percent", m.percent}, {"std_error", m.std_error}});
  }
  j["results"] = methods;
  j["theta_truth"] = r.theta_truth ? Json(*r.theta_truth) : Json(nullptr);
  j["theta_source"] = r.theta_source.empty() ? Json(nullptr) : Json(r.theta_source);
  j["mean_ell"] = r.mean_ell;
  j["seed"] = config.seed;
  j["wall_seconds"] = r.seconds;
  return j;
}

// One results-table row: configuration columns then method columns.
Json simulate_row(const Json& report) {
  Json row = report["config"];
  row["theta_truth"] = report["theta_truth"];
  row["theta_source"] = report["theta_source"];
  row["mean_ell"] = report["mean_ell"];
  row["seed"] = report["seed"];
  row["wall_seconds"] = report["wall_seconds"];
  return row;
}

}  // namespace

Sample read_csv(std::istream& in, std::vector<std::string>* header) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool first = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(line);
    if (first) {
      first = false;
      width = fields.size();
      bool numeric = true;
      for (const auto f : fields) {
        numeric = numeric && parse_number(f).has_value();
      }
      if (!numeric) {
        if (header != nullptr) {
          header->assign(fields.begin(), fields.end());
        }
        continue;
      }
    }
    if (fields.size() != width) {
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const auto v = parse_number(fields[k]);
      if (!v || !std::isfinite(*v)) {
        throw DataError("line " + std::to_string(line_no) + ", field " + std::to_string(k + 1) + ": '" +
                        std::string(fields[k]) + "' is not a finite number");
      }
      values.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) {
    throw DataError("input has no data rows");
  }
  try {
    return Sample(rows, width, std::move(values));
  } catch (const DataError& e) {
    throw DataError(std::string("input: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependent multiplier bootstrap inference for U-statistics", "ustatboot"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ustatboot 0.1.0");

  Common ci_args;
  CLI::App* ci = app.add_subcommand("ci", "Confidence interval for theta = E h(X, Y)");
  ci_args.method = "asymptotic";
  ci->add_option("--method", ci_args.method, "Interval")
      ->check(CLI::IsMember({"asymptotic", "bootstrap"}))
      ->capture_default_str();
  ci->add_option("--alpha", ci_args.alpha, "Nominal level")->capture_default_str();
  add_data_options(*ci, ci_args);

  Common cp_args;
  CLI::App* cp = app.add_subcommand("cp", "Test for a change in theta");
  cp_args.method = "check";
  cp->add_option("--method", cp_args.method, "p-value method")
      ->check(CLI::IsMember({"asymptotic", "hat", "check"}))
      ->capture_default_str();
  add_data_options(*cp, cp_args);

  Common sim_args;
  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo study on simulated data");
  simulate->add_option("MODE", sim.mode, "Study type")
      ->required()
      ->check(CLI::IsMember({"coverage", "cplevel", "cppower"}));
  simulate->add_option("--model", sim.model, "Time-series model")
      ->check(CLI::IsMember({"ar1", "garch"}))
      ->capture_default_str();
  simulate->add_option("--zeta", sim.zeta, "AR1 coefficient")->capture_default_str();
  simulate->add_option("--innov", sim.innov, "Univariate innovations")
      ->check(CLI::IsMember({"normal", "t5"}))
      ->capture_default_str();
  simulate->add_option("--copula", sim.copula, "Bivariate innovations from this copula")
      ->check(CLI::IsMember({"clayton", "gumbel"}));
  simulate->add_option("--tau", sim.tau, "Kendall's tau before the break")->capture_default_str();
  sim.tau2_opt = simulate->add_option("--tau2", sim.tau2, "Kendall's tau after the break (default: --tau)");
  simulate->add_option("--break", sim.break_fraction, "Break fraction t")->capture_default_str();
  simulate->add_option("--n", sim.n, "Sample size")->capture_default_str();
  simulate->add_option("--reps", sim.reps, "Monte Carlo repetitions")->capture_default_str();
  simulate->add_option("--burn-in", sim.burn_in, "Burn-in length")->capture_default_str();
  simulate->add_option("--alpha", sim_args.alpha, "Nominal level")->capture_default_str();
  simulate->add_option("--M", sim_args.replicates, "Bootstrap replicates")->capture_default_str();
  sim_args.seed_opt = simulate->add_option("--seed", sim_args.seed, "Random seed (drawn and reported when omitted)");
  sim.kernel_opt = simulate->add_option("--kernel", sim_args.kernel, "Kernel (default: variance, kendall with --copula)")
                       ->check(CLI::IsMember({"variance", "gini", "kendall"}));
  sim.theta_opt = simulate->add_option("--theta", sim.theta, "True theta for coverage (default: closed form or estimate)");
  simulate->add_flag("--hat", sim.hat, "Also run the hat bootstrap in change-point modes");
  add_output_options(*simulate, sim_args);

  std::vector<const char*> argv{"ustatboot"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  // Subcommand help requests surface as CallForHelp from the subcommand.
  try {
    if (ci->parsed()) {
      emit(run_ci(ci_args, err), ci_args.format, out);
    } else if (cp->parsed()) {
      emit(run_cp(cp_args, err), cp_args.format, out);
    } else {
      if (sim.reps == 0) {
        throw ArgumentError("--reps must be >= 1");
      }
      const Json report = run_simulate(sim_args, sim);
      if (sim_args.format == "json") {
        emit(report, "json", out);
      } else {
        emit(simulate_row(report), sim_args.format, out);
      }
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace ustatboot::cli
