// bbsim: batched-bandit simulation CLI.
//
// Subcommands: mab, linear, adversarial, sweep. Options can come from a JSON
// config file (--config); flags given on the command line override config
// values. Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "batchbandits/batchbandits.hpp"

namespace {

using batchbandits::AdversaryKind;
using batchbandits::ExperimentKind;
using batchbandits::IoError;
using batchbandits::NoiseKind;
using batchbandits::OutputFormat;
using batchbandits::RewardKind;
using batchbandits::RunConfig;

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::invalid_argument(field + ": cannot parse '" + cell + "' as a number");
    }
  }
  if (out.empty()) throw std::invalid_argument(field + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field) {
  std::vector<int> out;
  for (double v : parse_double_list(text, field)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<std::vector<double>> read_actions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open actions file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_double_list(line, "actions-file"));
  }
  if (rows.empty()) throw std::invalid_argument("actions-file: no action rows");
  return rows;
}

ExperimentKind parse_kind(const std::string& name) {
  if (name == "mab") return ExperimentKind::kMab;
  if (name == "linear") return ExperimentKind::kLinear;
  if (name == "adversarial") return ExperimentKind::kAdversarial;
  throw std::invalid_argument("kind: unknown experiment '" + name + "'");
}

AdversaryKind parse_adversary(const std::string& name) {
  if (name == "batchrandom") return AdversaryKind::kBatchRandom;
  if (name == "switching") return AdversaryKind::kSwitching;
  if (name == "file") return AdversaryKind::kFile;
  throw std::invalid_argument("adversary: must be batchrandom, switching or file");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  if (name == "svg") return OutputFormat::kSvg;
  throw std::invalid_argument("format: must be csv, json or svg");
}

RewardKind parse_reward_kind(const std::string& name) {
  if (name == "bernoulli") return RewardKind::kBernoulli;
  if (name == "truncated_gaussian") return RewardKind::kTruncatedGaussian;
  throw std::invalid_argument("reward-kind: must be bernoulli or truncated_gaussian");
}

NoiseKind parse_noise(const std::string& name) {
  if (name == "gaussian") return NoiseKind::kGaussian;
  if (name == "uniform") return NoiseKind::kBoundedUniform;
  if (name == "none") return NoiseKind::kNone;
  throw std::invalid_argument("noise: must be gaussian, uniform or none");
}

// Raw CLI strings; applied on top of config-file values when provided.
struct CliValues {
  std::string means, theta, actions_file;
  std::string adversary, adversary_file;
  std::int64_t horizon = 0;
  std::string batches;
  int reps = 0;
  std::uint64_t seed = 0;
  double q = 0.0;
  std::string out, format, config_file;
  std::string reward_kind, noise, sweep_kind;
  double sigma = 0.0;
  int threads = 0;
  bool verbose = false;
};

struct CliOptions {
  CLI::Option* means = nullptr;
  CLI::Option* theta = nullptr;
  CLI::Option* actions_file = nullptr;
  CLI::Option* adversary = nullptr;
  CLI::Option* adversary_file = nullptr;
  CLI::Option* horizon = nullptr;
  CLI::Option* batches = nullptr;
  CLI::Option* reps = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* q = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* config_file = nullptr;
  CLI::Option* reward_kind = nullptr;
  CLI::Option* noise = nullptr;
  CLI::Option* sigma = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* verbose = nullptr;
  CLI::Option* sweep_kind = nullptr;
};

CliOptions add_common_options(CLI::App* cmd, CliValues& v) {
  CliOptions opts;
  opts.means = cmd->add_option("--means", v.means,
                               "Comma-separated arm means in [0,1] (mab)");
  opts.theta = cmd->add_option("--theta", v.theta,
                               "Comma-separated components of theta* (linear)");
  opts.actions_file = cmd->add_option(
      "--actions-file", v.actions_file,
      "File with one comma-separated action vector per line (linear)");
  opts.adversary = cmd->add_option("--adversary", v.adversary,
                                   "Adversary kind: batchrandom, switching or file");
  opts.adversary_file = cmd->add_option("--adversary-file", v.adversary_file,
                                        "Reward-table CSV for --adversary file");
  opts.horizon = cmd->add_option("--horizon", v.horizon, "Time horizon T");
  opts.batches = cmd->add_option(
      "--batches", v.batches, "Number of batches B (comma list for sweep)");
  opts.reps = cmd->add_option("--reps", v.reps, "Number of replications");
  opts.seed = cmd->add_option("--seed", v.seed, "Master seed");
  opts.q = cmd->add_option("--q", v.q, "Override the batch growth rate q (mab)");
  opts.out = cmd->add_option("--out", v.out, "Output path (default: stdout)");
  opts.format = cmd->add_option("--format", v.format, "Output format: csv, json or svg");
  opts.config_file = cmd->add_option("--config", v.config_file,
                                     "JSON config file; flags override its values");
  opts.reward_kind = cmd->add_option("--reward-kind", v.reward_kind,
                                     "mab rewards: bernoulli or truncated_gaussian");
  opts.noise = cmd->add_option("--noise", v.noise,
                               "linear noise: gaussian, uniform or none");
  opts.sigma = cmd->add_option("--sigma", v.sigma, "Noise scale");
  opts.threads = cmd->add_option("--threads", v.threads,
                                 "Worker threads (0: hardware concurrency)");
  opts.verbose = cmd->add_flag("--verbose", v.verbose,
                               "Print the per-batch log of replication 0");
  opts.sweep_kind = cmd->add_option("--kind", v.sweep_kind,
                                    "Experiment kind swept over B (sweep only)");
  return opts;
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (j.contains("means")) config.means = j["means"].get<std::vector<double>>();
  if (j.contains("reward_kind")) config.reward_kind = parse_reward_kind(j["reward_kind"]);
  if (j.contains("theta")) config.theta = j["theta"].get<std::vector<double>>();
  if (j.contains("actions"))
    config.actions = j["actions"].get<std::vector<std::vector<double>>>();
  if (j.contains("actions_file")) config.actions = read_actions_file(j["actions_file"]);
  if (j.contains("adversary")) config.adversary = parse_adversary(j["adversary"]);
  if (j.contains("adversary_file")) config.adversary_file = j["adversary_file"];
  if (j.contains("horizon")) config.horizon = j["horizon"].get<std::int64_t>();
  if (j.contains("batches")) {
    if (j["batches"].is_array())
      config.batch_counts = j["batches"].get<std::vector<int>>();
    else
      config.batch_counts = {j["batches"].get<int>()};
  }
  if (j.contains("reps")) config.reps = j["reps"].get<int>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("q")) config.q_override = j["q"].get<double>();
  if (j.contains("out")) config.out_path = j["out"];
  if (j.contains("format")) config.format = parse_format(j["format"]);
  if (j.contains("noise")) config.noise_kind = parse_noise(j["noise"]);
  if (j.contains("sigma")) {
    config.noise_sigma = j["sigma"].get<double>();
    config.mab_sigma = j["sigma"].get<double>();
  }
  if (j.contains("threads")) config.threads = j["threads"].get<int>();
  if (j.contains("verbose")) config.verbose = j["verbose"].get<bool>();
  if (j.contains("kind")) config.sweep_kind = parse_kind(j["kind"]);
}

RunConfig build_config(ExperimentKind kind, const CliValues& v, const CliOptions& o) {
  RunConfig config;
  config.kind = kind;
  if (o.config_file->count() > 0) apply_config_file(config, v.config_file);
  if (o.means->count() > 0) config.means = parse_double_list(v.means, "means");
  if (o.reward_kind->count() > 0) config.reward_kind = parse_reward_kind(v.reward_kind);
  if (o.theta->count() > 0) config.theta = parse_double_list(v.theta, "theta");
  if (o.actions_file->count() > 0) config.actions = read_actions_file(v.actions_file);
  if (o.adversary->count() > 0) config.adversary = parse_adversary(v.adversary);
  if (o.adversary_file->count() > 0) config.adversary_file = v.adversary_file;
  if (o.horizon->count() > 0) config.horizon = v.horizon;
  if (o.batches->count() > 0) config.batch_counts = parse_int_list(v.batches, "batches");
  if (o.reps->count() > 0) config.reps = v.reps;
  if (o.seed->count() > 0) config.seed = v.seed;
  if (o.q->count() > 0) config.q_override = v.q;
  if (o.out->count() > 0) config.out_path = v.out;
  if (o.format->count() > 0) config.format = parse_format(v.format);
  if (o.noise->count() > 0) config.noise_kind = parse_noise(v.noise);
  if (o.sigma->count() > 0) {
    config.noise_sigma = v.sigma;
    config.mab_sigma = v.sigma;
  }
  if (o.threads->count() > 0) config.threads = v.threads;
  if (o.verbose->count() > 0) config.verbose = v.verbose;
  if (o.sweep_kind->count() > 0) config.sweep_kind = parse_kind(v.sweep_kind);

  if (kind != ExperimentKind::kSweep && config.batch_counts.size() > 1)
    throw std::invalid_argument("batches: a single value is required outside sweep");
  return config;
}

int run(const RunConfig& config) {
  batchbandits::ExperimentRunner runner(config);
  if (config.verbose) runner.print_rep_log(0, config.batch_counts.front(), std::cerr);

  std::vector<batchbandits::RunSummary> summaries;
  if (config.kind == ExperimentKind::kSweep) {
    for (int b : config.batch_counts)
      summaries.push_back(batchbandits::summarize_experiment(runner, b));
  } else {
    summaries.push_back(
        batchbandits::summarize_experiment(runner, config.batch_counts.front()));
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!config.out_path.empty()) {
    file.open(config.out_path);
    if (!file) throw IoError("cannot open output path: " + config.out_path);
    out = &file;
  }

  switch (config.format) {
    case OutputFormat::kCsv:
      if (config.kind == ExperimentKind::kSweep)
        batchbandits::export_sweep_csv(summaries, *out);
      else
        batchbandits::export_traces_csv(runner, config.batch_counts.front(), *out);
      break;
    case OutputFormat::kJson:
      batchbandits::export_summary_json(summaries, *out);
      break;
    case OutputFormat::kSvg:
      if (config.kind == ExperimentKind::kSweep)
        batchbandits::export_sweep_svg(summaries, *out);
      else
        batchbandits::export_svg(summaries.front(), *out);
      break;
  }
  out->flush();
  if (!(*out)) throw IoError("write failed: " + config.out_path);

  const auto& s = summaries.front();
  std::cerr << s.experiment << ": mean final regret " << s.mean << " +- "
            << s.ci_half_width << " over " << s.reps << " reps";
  if (s.bound) std::cerr << " (bound " << *s.bound << ")";
  std::cerr << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bbsim - batched bandit simulations: arm-elimination policies for "
      "stochastic multi-armed and linear bandits, a delayed-update "
      "adversarial player, and a replicated regret harness.\n"
      "Option precedence: command-line flags > --config file > defaults."};
  app.require_subcommand(1);

  CliValues values;
  auto* mab = app.add_subcommand("mab", "Batched elimination on a stochastic MAB instance");
  auto* linear = app.add_subcommand("linear", "Batched elimination on a linear instance");
  auto* adversarial =
      app.add_subcommand("adversarial", "Delayed-update player on an adversarial table");
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment over several B values");
  const CliOptions mab_opts = add_common_options(mab, values);
  const CliOptions linear_opts = add_common_options(linear, values);
  const CliOptions adversarial_opts = add_common_options(adversarial, values);
  const CliOptions sweep_opts = add_common_options(sweep, values);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config;
    if (mab->parsed()) config = build_config(ExperimentKind::kMab, values, mab_opts);
    else if (linear->parsed()) config = build_config(ExperimentKind::kLinear, values, linear_opts);
    else if (adversarial->parsed())
      config = build_config(ExperimentKind::kAdversarial, values, adversarial_opts);
    else config = build_config(ExperimentKind::kSweep, values, sweep_opts);
    config.validate();
    return run(config);
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
