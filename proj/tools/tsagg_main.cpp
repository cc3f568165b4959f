// Command-line front end: simulate series, fit estimators, run the
// simulation study, and evaluate the oracle-inequality calculator.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tsagg/baselines.hpp"
#include "tsagg/bounds.hpp"
#include "tsagg/config.hpp"
#include "tsagg/csv.hpp"
#include "tsagg/experiment.hpp"
#include "tsagg/sampler.hpp"
#include "tsagg/simulate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace tsagg;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitBadInput = 2;

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out.empty() ? "." : out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out_file(const fs::path& path) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  return stream;
}

ProcessSpec process_from_config(const KeyValueConfig& config) {
  const std::string innovation_name =
      config.get_string_or("innovation", "uniform");
  InnovationSpec innovation;
  if (innovation_name == "uniform") {
    innovation = InnovationSpec::uniform(config.get_double_or("a", 0.70));
  } else if (innovation_name == "gaussian") {
    innovation = InnovationSpec::gaussian(config.get_double_or("sigma", 0.4));
  } else {
    throw std::invalid_argument("unknown innovation \"" + innovation_name + "\"");
  }

  ProcessSpec spec;
  if (config.has("model")) {
    ExperimentConfig defaults;
    defaults.uniform_a = config.get_double_or("a", defaults.uniform_a);
    defaults.gaussian_sigma = config.get_double_or("sigma", defaults.gaussian_sigma);
    spec = make_model_spec(config.get_string("model"), innovation_name, defaults);
  } else {
    const std::string process = config.get_string_or("process", "ar");
    if (process == "ar") {
      spec = ProcessSpec::ar(config.get_double_list("coeffs"), innovation);
    } else if (process == "ma") {
      spec = ProcessSpec::ma(config.get_double_list("coeffs"), innovation);
    } else if (process == "nonlinear_cos_sin") {
      spec = ProcessSpec::nonlinear_cos_sin(innovation);
    } else {
      throw std::invalid_argument("unknown process \"" + process + "\"");
    }
  }
  spec.burn_in = config.get_u64_or("burn_in", 1000);
  return spec;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out) {
  KeyValueConfig config = KeyValueConfig::load(config_path);
  config.require_known_keys({"model", "process", "coeffs", "innovation", "a",
                             "sigma", "burn_in", "length", "seed"});
  const ProcessSpec spec = process_from_config(config);
  const std::size_t length = config.get_u64("length");
  const std::uint64_t used_seed = seed ? *seed : config.get_u64_or("seed", 1);
  const TimeSeries series = simulate(spec, length, used_seed);
  const fs::path path = prepare_out_dir(out) / "series.csv";
  write_series_csv(path.string(), series);
  std::cout << "wrote " << path.string() << " (" << length << " observations, seed "
            << used_seed << ")\n";
  return kExitOk;
}

void write_sparse_report(std::ostream& out, const SparseParam& theta) {
  out << "support_size=" << theta.support_size() << "\n";
  out << "support=";
  const auto& support = theta.support();
  const auto& coeffs = theta.coeffs();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i > 0) out << ',';
    out << (support[i] + 1) << ':' << format_double(coeffs[i]);
  }
  out << "\n";
}

int cmd_fit(const std::string& series_path, const std::string& method,
            const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out) {
  KeyValueConfig config = config_path.empty() ? KeyValueConfig::parse("")
                                              : KeyValueConfig::load(config_path);
  config.require_known_keys({"q", "b", "basis", "lambda", "seed",
                             "sampler.n_iter", "sampler.n_burn",
                             "sampler.update_step", "sampler.birth_scale",
                             "sampler.thinning"});
  const TimeSeries series = read_series_csv(series_path);
  const std::size_t q = config.get_u64_or("q", 20);
  const fs::path report_path = prepare_out_dir(out) / "fit_report.txt";
  std::ofstream report = open_out_file(report_path);
  report << "method=" << method << "\n";
  report << "series=" << series_path << "\n";
  report << "n=" << series.size() << "\n";
  report << "q=" << q << "\n";

  if (method == "gibbs") {
    const std::string basis_name = config.get_string_or("basis", "ar_linear");
    const PredictorBasis basis = make_basis(basis_kind_from_name(basis_name), q);
    SamplerConfig sampler;
    sampler.b = config.get_double_or("b", 10.0);
    sampler.n_iter = config.get_u64_or("sampler.n_iter", sampler.n_iter);
    sampler.n_burn = config.get_u64_or("sampler.n_burn", sampler.n_burn);
    sampler.update_step = config.get_double_or("sampler.update_step", 0.0);
    sampler.birth_proposal_scale =
        config.get_double_or("sampler.birth_scale", sampler.birth_proposal_scale);
    sampler.thinning = config.get_u64_or("sampler.thinning", 1);
    sampler.seed = seed ? *seed : config.get_u64_or("seed", 1);
    std::optional<double> lambda;
    if (config.has("lambda")) lambda = config.get_double("lambda");
    const GibbsFit fit = fit_gibbs(series, basis, sampler, lambda);
    report << "basis=" << basis_name << "\n";
    report << "lambda=" << format_double(fit.lambda) << "\n";
    report << "train_risk=" << format_double(fit.train_risk) << "\n";
    write_sparse_report(report, fit.theta);
    report << "accept_birth=" << format_double(fit.chain.birth.acceptance_rate()) << "\n";
    report << "accept_death=" << format_double(fit.chain.death.acceptance_rate()) << "\n";
    report << "accept_update=" << format_double(fit.chain.update.acceptance_rate()) << "\n";
    report << "seed=" << sampler.seed << "\n";
  } else if (method == "aic" || method == "full") {
    const YwFit fit = method == "aic" ? yw_aic_select(series, q, q)
                                      : yw_ar_fit(series, q, q);
    report << "order=" << fit.fit.order << "\n";
    report << "intercept=" << format_double(fit.fit.intercept) << "\n";
    report << "coeffs=";
    for (std::size_t j = 0; j < fit.fit.coeffs.size(); ++j) {
      if (j > 0) report << ',';
      report << format_double(fit.fit.coeffs[j]);
    }
    report << "\n";
    report << "var_pred=" << format_double(fit.var_pred) << "\n";
    report << "train_risk="
           << format_double(fit.fit.rss / static_cast<double>(fit.fit.n_eff)) << "\n";
  } else {
    throw std::invalid_argument("unknown method \"" + method +
                                "\" (expected gibbs, aic, or full)");
  }
  std::cout << "wrote " << report_path.string() << "\n";
  return kExitOk;
}

int cmd_experiment(const std::string& config_path,
                   std::optional<std::uint64_t> seed, const std::string& out,
                   int jobs) {
  ExperimentConfig config;
  if (!config_path.empty())
    config = ExperimentConfig::from_config(KeyValueConfig::load(config_path));
  if (seed) config.master_seed = *seed;
  config.validate();

  const fs::path dir = prepare_out_dir(out);
  std::ofstream results = open_out_file(dir / "results.csv");
  const ExperimentResult result = run_experiment(config, jobs, &results);
  results.close();
  std::ofstream summary = open_out_file(dir / "summary.csv");
  write_summary_csv(summary, result.summary);
  summary.close();
  std::cout << "wrote " << (dir / "results.csv").string() << " ("
            << result.rows.size() << " rows) and "
            << (dir / "summary.csv").string() << " (" << result.summary.size()
            << " cells)\n";
  return kExitOk;
}

int cmd_bounds(const std::string& config_path, const std::string& out) {
  KeyValueConfig config = KeyValueConfig::load(config_path);
  config.require_known_keys(
      {"n", "q", "p", "b", "B", "Phi_q", "eta", "epsilon", "support_size", "p0"});
  BoundInputs inputs;
  inputs.n = config.get_u64("n");
  inputs.q = config.get_u64("q");
  inputs.p = config.get_u64("p");
  inputs.b = config.get_double("b");
  inputs.B = config.get_double("B");
  inputs.Phi_q = config.get_double("Phi_q");
  inputs.eta = config.get_double("eta");
  inputs.epsilon = config.get_double("epsilon");
  inputs.support_size = config.get_u64_or("support_size", 0);
  const std::size_t p0 = config.get_u64_or("p0", inputs.support_size);

  std::ostringstream report;
  report << "lambda=" << format_double(theorem_lambda(inputs)) << "\n";
  report << "support_cap=" << format_double(inputs.support_cap()) << "\n";
  report << "approximation_factor=" << format_double(approximation_factor(inputs))
         << "\n";
  report << "remainder=" << format_double(oracle_remainder(inputs)) << "\n";
  report << "corollary_p0=" << p0 << "\n";
  report << "corollary_bound=" << format_double(sparse_corollary_bound(inputs, p0))
         << "\n";
  std::cout << report.str();
  if (!out.empty()) {
    std::ofstream file = open_out_file(prepare_out_dir(out) / "bounds.txt");
    file << report.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse aggregation of time-series predictors"};
  app.require_subcommand(1);

  std::string config_path, out_dir, method = "gibbs", series_path;
  std::optional<std::uint64_t> seed;
  int jobs = 0;

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Draw a sample path and write it to CSV");
  simulate_cmd->add_option("--config", config_path, "process spec (key=value)")
      ->required();
  simulate_cmd->add_option("--seed", seed, "override the config seed");
  simulate_cmd->add_option("--out", out_dir, "output directory (default .)");

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit one estimator to a series");
  fit_cmd->add_option("series", series_path, "input series CSV")->required();
  fit_cmd->add_option("--method", method, "gibbs | aic | full");
  fit_cmd->add_option("--config", config_path, "fit parameters (key=value)");
  fit_cmd->add_option("--seed", seed, "sampler seed");
  fit_cmd->add_option("--out", out_dir, "output directory (default .)");

  CLI::App* experiment_cmd =
      app.add_subcommand("experiment", "Run the full simulation study");
  experiment_cmd->add_option("--config", config_path, "grid overrides (key=value)");
  experiment_cmd->add_option("--seed", seed, "override master_seed");
  experiment_cmd->add_option("--out", out_dir, "output directory (default .)");
  experiment_cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)");

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "Evaluate the oracle-inequality calculator");
  bounds_cmd->add_option("--config", config_path, "bound inputs (key=value)")
      ->required();
  bounds_cmd->add_option("--out", out_dir, "also write bounds.txt here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(config_path, seed, out_dir);
    if (fit_cmd->parsed()) return cmd_fit(series_path, method, config_path, seed, out_dir);
    if (experiment_cmd->parsed())
      return cmd_experiment(config_path, seed, out_dir, jobs);
    if (bounds_cmd->parsed()) return cmd_bounds(config_path, out_dir);
    std::cerr << "no subcommand selected\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
