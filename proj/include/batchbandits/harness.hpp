#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "batchbandits/env.hpp"
#include "batchbandits/policy_adversarial.hpp"
#include "batchbandits/policy_linear.hpp"
#include "batchbandits/policy_mab.hpp"
#include "batchbandits/regret.hpp"
#include "batchbandits/rng.hpp"

namespace batchbandits {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { kMab, kLinear, kAdversarial, kSweep };
enum class AdversaryKind { kBatchRandom, kSwitching, kFile };
enum class OutputFormat { kCsv, kJson, kSvg };

struct RunConfig {
  ExperimentKind kind = ExperimentKind::kMab;

  // stochastic multi-armed
  std::vector<double> means;
  RewardKind reward_kind = RewardKind::kBernoulli;
  double mab_sigma = 0.1;
  std::optional<double> q_override;

  // stochastic linear
  std::vector<double> theta;
  std::vector<std::vector<double>> actions;
  NoiseKind noise_kind = NoiseKind::kGaussian;
  double noise_sigma = 1.0;

  // adversarial
  AdversaryKind adversary = AdversaryKind::kBatchRandom;
  std::string adversary_file;

  // common
  std::int64_t horizon = 1000;
  std::vector<int> batch_counts{4};  // several entries only for sweeps
  ExperimentKind sweep_kind = ExperimentKind::kMab;
  int reps = 100;
  std::uint64_t seed = 1;
  std::string out_path;
  OutputFormat format = OutputFormat::kCsv;
  int threads = 0;  // 0: hardware concurrency
  bool verbose = false;

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("horizon: must be >= 1");
    if (reps < 1) throw std::invalid_argument("reps: must be >= 1");
    if (batch_counts.empty()) throw std::invalid_argument("batches: need at least one value");
    for (int b : batch_counts)
      if (b < 1 || static_cast<std::int64_t>(b) > horizon)
        throw std::invalid_argument("batches: need 1 <= B <= horizon");
    const ExperimentKind effective =
        kind == ExperimentKind::kSweep ? sweep_kind : kind;
    if (effective == ExperimentKind::kMab && means.empty())
      throw std::invalid_argument("means: required for mab experiments");
    if (effective == ExperimentKind::kLinear) {
      if (theta.empty()) throw std::invalid_argument("theta: required for linear experiments");
      if (actions.empty())
        throw std::invalid_argument("actions: required for linear experiments");
    }
    if (effective == ExperimentKind::kAdversarial &&
        adversary == AdversaryKind::kFile && adversary_file.empty())
      throw std::invalid_argument("adversary-file: required for file adversaries");
    if (kind == ExperimentKind::kSweep && sweep_kind == ExperimentKind::kSweep)
      throw std::invalid_argument("sweep: nested sweep kind is not valid");
  }
};

struct RepResult {
  RegretTrace trace;
  int batches_used = 0;
};

struct RunSummary {
  std::string experiment;
  int batches = 0;
  std::int64_t horizon = 0;
  int reps = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ci_half_width = 0.0;  // 95% normal approximation
  double min = 0.0;
  double max = 0.0;
  std::vector<double> finals;
  std::optional<double> bound;  // elimination regret bound, mab only
  double mean_batches = 0.0;
  int min_batches = 0;
  int max_batches = 0;
  std::vector<double> mean_trace;
  std::vector<double> sd_trace;
};

// Prepares the immutable experiment inputs once. Replication r draws every
// random number from streams derived from (seed, r), so results are a pure
// function of the config regardless of the worker count.
class ExperimentRunner {
 public:
  explicit ExperimentRunner(RunConfig config) : config_(std::move(config)) {
    config_.validate();
    const ExperimentKind effective = effective_kind();
    if (effective == ExperimentKind::kMab) {
      mab_.emplace(config_.means, config_.reward_kind, config_.mab_sigma);
    } else if (effective == ExperimentKind::kLinear) {
      Eigen::VectorXd theta(static_cast<Eigen::Index>(config_.theta.size()));
      for (std::size_t i = 0; i < config_.theta.size(); ++i)
        theta(static_cast<Eigen::Index>(i)) = config_.theta[i];
      std::vector<Eigen::VectorXd> acts;
      acts.reserve(config_.actions.size());
      for (const auto& row : config_.actions) {
        Eigen::VectorXd a(static_cast<Eigen::Index>(row.size()));
        for (std::size_t i = 0; i < row.size(); ++i) a(static_cast<Eigen::Index>(i)) = row[i];
        acts.push_back(std::move(a));
      }
      linear_.emplace(std::move(theta), std::move(acts), config_.noise_kind,
                      config_.noise_sigma);
    } else if (config_.adversary == AdversaryKind::kFile) {
      std::ifstream in(config_.adversary_file);
      if (!in) throw IoError("cannot open adversary file: " + config_.adversary_file);
      file_table_.emplace(read_table_csv(in));
      if (file_table_->horizon() != config_.horizon)
        throw std::invalid_argument("adversary-file: table horizon must match horizon");
    }
  }

  const RunConfig& config() const { return config_; }

  ExperimentKind effective_kind() const {
    return config_.kind == ExperimentKind::kSweep ? config_.sweep_kind : config_.kind;
  }

  const char* experiment_name() const {
    switch (effective_kind()) {
      case ExperimentKind::kMab:         return "mab";
      case ExperimentKind::kLinear:      return "linear";
      case ExperimentKind::kAdversarial: return "adversarial";
      default:                           return "sweep";
    }
  }

  RepResult run_rep(int rep, int batches) const {
    SplitRng rep_rng(config_.seed, static_cast<std::uint64_t>(rep));
    SplitRng env_rng = rep_rng.split(0);
    SplitRng player_rng = rep_rng.split(1);
    switch (effective_kind()) {
      case ExperimentKind::kMab: {
        auto run = run_batched_mab(*mab_, config_.horizon, batches, config_.q_override,
                                   player_rng);
        return {std::move(run.trace), run.batches_used};
      }
      case ExperimentKind::kLinear: {
        auto run = run_batched_linear(*linear_, config_.horizon, batches, player_rng);
        return {std::move(run.trace), run.batches_used};
      }
      case ExperimentKind::kAdversarial: {
        AdversarialRunResult run = [&] {
          if (config_.adversary == AdversaryKind::kFile)
            return run_batched_adversarial(*file_table_, config_.horizon, batches, player_rng);
          if (config_.adversary == AdversaryKind::kBatchRandom) {
            const auto table = make_batch_random_adversary(
                2, make_uniform_schedule(config_.horizon, batches), env_rng);
            return run_batched_adversarial(table, config_.horizon, batches, player_rng);
          }
          const auto table = make_switching_adversary(2, config_.horizon, env_rng);
          return run_batched_adversarial(table, config_.horizon, batches, player_rng);
        }();
        return {std::move(run.trace), static_cast<int>(run.schedule_sizes.size())};
      }
      default:
        throw std::logic_error("run_rep: sweep has no direct replications");
    }
  }

  std::optional<double> bound(int batches) const {
    if (effective_kind() != ExperimentKind::kMab) return std::nullopt;
    return theoretical_bound_mab(*mab_, config_.horizon, batches);
  }

  // Re-runs one replication and prints a line per batch.
  void print_rep_log(int rep, int batches, std::ostream& out) const {
    SplitRng rep_rng(config_.seed, static_cast<std::uint64_t>(rep));
    SplitRng env_rng = rep_rng.split(0);
    SplitRng player_rng = rep_rng.split(1);
    const auto print_indices = [&out](const std::vector<int>& indices) {
      out << '[';
      for (std::size_t i = 0; i < indices.size(); ++i) out << (i ? " " : "") << indices[i];
      out << ']';
    };
    switch (effective_kind()) {
      case ExperimentKind::kMab: {
        const auto run = run_batched_mab(*mab_, config_.horizon, batches,
                                         config_.q_override, player_rng);
        for (const auto& record : run.batch_log) {
          out << "rep " << rep << " batch " << record.index << " size " << record.size
              << " active ";
          print_indices(record.active_before);
          if (record.exploit) {
            out << " exploit arm " << record.exploit_arm;
          } else {
            out << " threshold " << record.threshold << " eliminated ";
            print_indices(record.eliminated);
          }
          out << "\n";
        }
        return;
      }
      case ExperimentKind::kLinear: {
        const auto run = run_batched_linear(*linear_, config_.horizon, batches, player_rng);
        for (const auto& record : run.batch_log) {
          out << "rep " << rep << " batch " << record.index << " size " << record.size
              << " eps " << record.eps << " g " << record.g << " dim "
              << record.working_dim << " active ";
          print_indices(record.active_before);
          out << " eliminated ";
          print_indices(record.eliminated);
          out << "\n";
        }
        return;
      }
      case ExperimentKind::kAdversarial: {
        const auto table = [&]() -> AdversarialRewardTable {
          if (config_.adversary == AdversaryKind::kFile) return *file_table_;
          if (config_.adversary == AdversaryKind::kBatchRandom)
            return make_batch_random_adversary(
                2, make_uniform_schedule(config_.horizon, batches), env_rng);
          return make_switching_adversary(2, config_.horizon, env_rng);
        }();
        const auto run = run_batched_adversarial(table, config_.horizon, batches, player_rng);
        for (std::size_t b = 0; b < run.batch_distributions.size(); ++b) {
          out << "rep " << rep << " batch " << (b + 1) << " size "
              << run.schedule_sizes[b] << " distribution [";
          for (std::size_t i = 0; i < run.batch_distributions[b].size(); ++i)
            out << (i ? " " : "") << run.batch_distributions[b][i];
          out << "]\n";
        }
        return;
      }
      default:
        return;
    }
  }

 private:
  RunConfig config_;
  std::optional<StochasticMabInstance> mab_;
  std::optional<LinearBanditInstance> linear_;
  std::optional<AdversarialRewardTable> file_table_;
};

namespace detail {

inline constexpr int kRepBlock = 32;

}  // namespace detail

// Runs all replications for one B and aggregates. Per-round trace moments
// are accumulated per fixed-size replication block and folded in block
// order, so the output is bit-identical for any worker count.
inline RunSummary summarize_experiment(const ExperimentRunner& runner, int batches) {
  const RunConfig& config = runner.config();
  const int reps = config.reps;
  const auto horizon = static_cast<std::size_t>(config.horizon);
  std::vector<double> finals(static_cast<std::size_t>(reps));
  std::vector<int> batch_counts(static_cast<std::size_t>(reps));
  const int num_blocks = (reps + detail::kRepBlock - 1) / detail::kRepBlock;
  std::vector<std::vector<double>> block_sum(static_cast<std::size_t>(num_blocks));
  std::vector<std::vector<double>> block_sumsq(static_cast<std::size_t>(num_blocks));

  int workers = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, num_blocks));

  std::atomic<int> next_block{0};
  auto work = [&] {
    for (;;) {
      const int block = next_block.fetch_add(1);
      if (block >= num_blocks) return;
      auto& sum = block_sum[static_cast<std::size_t>(block)];
      auto& sumsq = block_sumsq[static_cast<std::size_t>(block)];
      sum.assign(horizon, 0.0);
      sumsq.assign(horizon, 0.0);
      const int lo = block * detail::kRepBlock;
      const int hi = std::min(reps, lo + detail::kRepBlock);
      for (int rep = lo; rep < hi; ++rep) {
        const RepResult result = runner.run_rep(rep, batches);
        finals[static_cast<std::size_t>(rep)] = result.trace.final_regret();
        batch_counts[static_cast<std::size_t>(rep)] = result.batches_used;
        for (std::size_t t = 0; t < horizon; ++t) {
          const double x = result.trace.cumulative[t];
          sum[t] += x;
          sumsq[t] += x * x;
        }
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  RunSummary summary;
  summary.experiment = runner.experiment_name();
  summary.batches = batches;
  summary.horizon = config.horizon;
  summary.reps = reps;
  summary.finals = finals;
  summary.bound = runner.bound(batches);

  double mean = 0.0;
  for (double f : finals) mean += f;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double f : finals) var += (f - mean) * (f - mean);
  var = reps > 1 ? var / static_cast<double>(reps - 1) : 0.0;
  summary.mean = mean;
  summary.stddev = std::sqrt(var);
  summary.ci_half_width = 1.96 * summary.stddev / std::sqrt(static_cast<double>(reps));
  summary.min = *std::min_element(finals.begin(), finals.end());
  summary.max = *std::max_element(finals.begin(), finals.end());

  double mean_batches = 0.0;
  for (int b : batch_counts) mean_batches += b;
  summary.mean_batches = mean_batches / static_cast<double>(reps);
  summary.min_batches = *std::min_element(batch_counts.begin(), batch_counts.end());
  summary.max_batches = *std::max_element(batch_counts.begin(), batch_counts.end());

  summary.mean_trace.assign(horizon, 0.0);
  summary.sd_trace.assign(horizon, 0.0);
  for (int block = 0; block < num_blocks; ++block) {
    for (std::size_t t = 0; t < horizon; ++t)
      summary.mean_trace[t] += block_sum[static_cast<std::size_t>(block)][t];
  }
  for (std::size_t t = 0; t < horizon; ++t) summary.mean_trace[t] /= static_cast<double>(reps);
  if (reps > 1) {
    for (int block = 0; block < num_blocks; ++block)
      for (std::size_t t = 0; t < horizon; ++t)
        summary.sd_trace[t] += block_sumsq[static_cast<std::size_t>(block)][t];
    for (std::size_t t = 0; t < horizon; ++t) {
      const double ssq = summary.sd_trace[t] -
                         static_cast<double>(reps) * summary.mean_trace[t] * summary.mean_trace[t];
      summary.sd_trace[t] = std::sqrt(std::max(0.0, ssq / static_cast<double>(reps - 1)));
    }
  }
  return summary;
}

inline RunSummary run_experiment(const RunConfig& config) {
  ExperimentRunner runner(config);
  if (config.kind == ExperimentKind::kSweep)
    throw std::invalid_argument("batches: run_experiment expects a single B; use run_sweep");
  return summarize_experiment(runner, config.batch_counts.front());
}

// One summary per B value, same instance and seed throughout.
inline std::vector<RunSummary> run_sweep(const RunConfig& config) {
  ExperimentRunner runner(config);
  std::vector<RunSummary> out;
  out.reserve(config.batch_counts.size());
  for (int b : config.batch_counts) out.push_back(summarize_experiment(runner, b));
  return out;
}

// --- exports ---------------------------------------------------------------

// Trace CSV, schema: experiment,rep,round,cum_regret.
inline void export_traces_csv(const std::string& experiment,
                              const std::vector<RegretTrace>& traces, std::ostream& out) {
  out << "experiment,rep,round,cum_regret\n";
  out.precision(17);
  for (std::size_t rep = 0; rep < traces.size(); ++rep)
    for (std::size_t t = 0; t < traces[rep].cumulative.size(); ++t)
      out << experiment << ',' << rep << ',' << (t + 1) << ','
          << traces[rep].cumulative[t] << "\n";
}

// Replications are re-simulated in order; determinism makes the rows exact
// without holding every trace in memory.
inline void export_traces_csv(const ExperimentRunner& runner, int batches,
                              std::ostream& out) {
  out << "experiment,rep,round,cum_regret\n";
  out.precision(17);
  for (int rep = 0; rep < runner.config().reps; ++rep) {
    const RepResult result = runner.run_rep(rep, batches);
    for (std::size_t t = 0; t < result.trace.cumulative.size(); ++t)
      out << runner.experiment_name() << ',' << rep << ',' << (t + 1) << ','
          << result.trace.cumulative[t] << "\n";
  }
}

// Reads a trace CSV back into per-replication cumulative traces.
inline std::vector<std::vector<double>> read_traces_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace csv: empty input");
  std::vector<std::vector<double>> traces;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string experiment, rep_str, round_str, value_str;
    if (!std::getline(ss, experiment, ',') || !std::getline(ss, rep_str, ',') ||
        !std::getline(ss, round_str, ',') || !std::getline(ss, value_str, ','))
      throw std::invalid_argument("trace csv: malformed row");
    const auto rep = static_cast<std::size_t>(std::stoll(rep_str));
    if (rep >= traces.size()) traces.resize(rep + 1);
    traces[rep].push_back(std::stod(value_str));
  }
  return traces;
}

inline nlohmann::json summary_to_json(const RunSummary& summary) {
  nlohmann::json j{{"experiment", summary.experiment},
                   {"batches", summary.batches},
                   {"horizon", summary.horizon},
                   {"reps", summary.reps},
                   {"mean_final_regret", summary.mean},
                   {"stddev", summary.stddev},
                   {"ci95_half_width", summary.ci_half_width},
                   {"min", summary.min},
                   {"max", summary.max},
                   {"finals", summary.finals},
                   {"batch_count",
                    {{"mean", summary.mean_batches},
                     {"min", summary.min_batches},
                     {"max", summary.max_batches}}}};
  if (summary.bound) j["bound"] = *summary.bound;
  return j;
}

inline void export_summary_json(const std::vector<RunSummary>& summaries,
                                std::ostream& out) {
  if (summaries.size() == 1) {
    out << summary_to_json(summaries.front()).dump(2) << "\n";
    return;
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : summaries) j.push_back(summary_to_json(s));
  out << j.dump(2) << "\n";
}

// Sweep CSV: one summary row per B.
inline void export_sweep_csv(const std::vector<RunSummary>& summaries, std::ostream& out) {
  out << "experiment,B,reps,mean_regret,stddev,ci95,min,max,mean_batches,bound\n";
  out.precision(17);
  for (const auto& s : summaries) {
    out << s.experiment << ',' << s.batches << ',' << s.reps << ',' << s.mean << ','
        << s.stddev << ',' << s.ci_half_width << ',' << s.min << ',' << s.max << ','
        << s.mean_batches << ',';
    if (s.bound) out << *s.bound;
    out << "\n";
  }
}

namespace detail {

struct SvgFrame {
  static constexpr double kWidth = 800.0, kHeight = 500.0;
  static constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;
  double x_min, x_max, y_min, y_max;

  double x(double v) const {
    return kLeft + (v - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  }
  double y(double v) const {
    return kHeight - kBottom - (v - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  }
};

inline void svg_axes(std::ostream& out, const SvgFrame& f, const std::string& x_label,
                     const std::string& y_label) {
  out << "<line x1='" << f.x(f.x_min) << "' y1='" << f.y(f.y_min) << "' x2='"
      << f.x(f.x_max) << "' y2='" << f.y(f.y_min)
      << "' stroke='black' stroke-width='1'/>\n";
  out << "<line x1='" << f.x(f.x_min) << "' y1='" << f.y(f.y_min) << "' x2='"
      << f.x(f.x_min) << "' y2='" << f.y(f.y_max)
      << "' stroke='black' stroke-width='1'/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / 5.0;
    const double yv = f.y_min + (f.y_max - f.y_min) * i / 5.0;
    out << "<text x='" << f.x(xv) << "' y='" << (SvgFrame::kHeight - 30.0)
        << "' font-size='11' text-anchor='middle'>" << xv << "</text>\n";
    out << "<text x='" << (SvgFrame::kLeft - 8.0) << "' y='" << (f.y(yv) + 4.0)
        << "' font-size='11' text-anchor='end'>" << yv << "</text>\n";
  }
  out << "<text x='" << (SvgFrame::kWidth / 2.0) << "' y='" << (SvgFrame::kHeight - 8.0)
      << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n";
  out << "<text x='16' y='" << (SvgFrame::kHeight / 2.0)
      << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
      << (SvgFrame::kHeight / 2.0) << ")'>" << y_label << "</text>\n";
}

}  // namespace detail

// Line plot of mean cumulative regret with a shaded 95% confidence band;
// for mab experiments the theoretical bound is drawn as a dashed reference.
inline void export_svg(const RunSummary& summary, std::ostream& out) {
  using detail::SvgFrame;
  const std::size_t horizon = summary.mean_trace.size();
  const double root_r = std::sqrt(static_cast<double>(summary.reps));
  double y_max = 1.0;
  for (std::size_t t = 0; t < horizon; ++t)
    y_max = std::max(y_max, summary.mean_trace[t] + 1.96 * summary.sd_trace[t] / root_r);
  if (summary.bound) y_max = std::max(y_max, *summary.bound);
  SvgFrame f{1.0, static_cast<double>(std::max<std::size_t>(horizon, 2)), 0.0, y_max * 1.05};

  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << SvgFrame::kWidth
      << "' height='" << SvgFrame::kHeight << "'>\n";
  out.precision(8);
  out << "<polygon fill='#a8c8f0' fill-opacity='0.5' stroke='none' points='";
  for (std::size_t t = 0; t < horizon; ++t)
    out << f.x(static_cast<double>(t + 1)) << ','
        << f.y(summary.mean_trace[t] + 1.96 * summary.sd_trace[t] / root_r) << ' ';
  for (std::size_t t = horizon; t-- > 0;)
    out << f.x(static_cast<double>(t + 1)) << ','
        << f.y(std::max(0.0, summary.mean_trace[t] - 1.96 * summary.sd_trace[t] / root_r))
        << ' ';
  out << "'/>\n";
  out << "<polyline fill='none' stroke='#1f4e99' stroke-width='1.5' points='";
  for (std::size_t t = 0; t < horizon; ++t)
    out << f.x(static_cast<double>(t + 1)) << ',' << f.y(summary.mean_trace[t]) << ' ';
  out << "'/>\n";
  if (summary.bound) {
    out << "<line x1='" << f.x(f.x_min) << "' y1='" << f.y(*summary.bound) << "' x2='"
        << f.x(f.x_max) << "' y2='" << f.y(*summary.bound)
        << "' stroke='#b03030' stroke-width='1' stroke-dasharray='6,4'/>\n";
    out << "<text x='" << (SvgFrame::kWidth - 150.0) << "' y='"
        << (f.y(*summary.bound) - 6.0)
        << "' font-size='11' fill='#b03030'>theoretical bound</text>\n";
  }
  detail::svg_axes(out, f, "round", "mean cumulative regret (" + summary.experiment + ")");
  out << "</svg>\n";
}

// Sweep plot: mean final regret against B with a confidence band.
inline void export_sweep_svg(const std::vector<RunSummary>& summaries, std::ostream& out) {
  using detail::SvgFrame;
  if (summaries.empty()) throw std::invalid_argument("sweep svg: no summaries");
  double x_max = 1.0, y_max = 1.0;
  for (const auto& s : summaries) {
    x_max = std::max(x_max, static_cast<double>(s.batches));
    y_max = std::max(y_max, s.mean + s.ci_half_width);
  }
  SvgFrame f{1.0, x_max, 0.0, y_max * 1.05};
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << SvgFrame::kWidth
      << "' height='" << SvgFrame::kHeight << "'>\n";
  out.precision(8);
  out << "<polygon fill='#a8c8f0' fill-opacity='0.5' stroke='none' points='";
  for (const auto& s : summaries)
    out << f.x(s.batches) << ',' << f.y(s.mean + s.ci_half_width) << ' ';
  for (auto it = summaries.rbegin(); it != summaries.rend(); ++it)
    out << f.x(it->batches) << ',' << f.y(std::max(0.0, it->mean - it->ci_half_width)) << ' ';
  out << "'/>\n";
  out << "<polyline fill='none' stroke='#1f4e99' stroke-width='1.5' points='";
  for (const auto& s : summaries) out << f.x(s.batches) << ',' << f.y(s.mean) << ' ';
  out << "'/>\n";
  detail::svg_axes(out, f, "batches B", "mean final regret");
  out << "</svg>\n";
}

}  // namespace batchbandits
