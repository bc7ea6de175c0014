#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "batchbandits/rng.hpp"

namespace batchbandits {

enum class RewardKind { kBernoulli, kTruncatedGaussian };

// Stochastic multi-armed bandit: one fixed reward distribution per arm,
// supported on [0,1], identified by its mean.
struct StochasticMabInstance {
  std::vector<double> means;
  RewardKind reward_kind = RewardKind::kBernoulli;
  double sigma = 0.1;  // spread of the truncated-Gaussian variant

  explicit StochasticMabInstance(std::vector<double> m,
                                 RewardKind kind = RewardKind::kBernoulli,
                                 double s = 0.1)
      : means(std::move(m)), reward_kind(kind), sigma(s) {
    if (means.empty()) throw std::invalid_argument("means: need at least one arm");
    for (double mu : means) {
      if (!(mu >= 0.0 && mu <= 1.0))
        throw std::invalid_argument("means: every mean must lie in [0,1]");
    }
    if (kind == RewardKind::kTruncatedGaussian && !(sigma > 0.0))
      throw std::invalid_argument("sigma: must be positive");
  }

  int num_arms() const { return static_cast<int>(means.size()); }

  double best_mean() const {
    double best = means[0];
    for (double mu : means) best = std::max(best, mu);
    return best;
  }
};

// Per-arm suboptimality gaps: gap_i = max_a mean_a - mean_i.
inline std::vector<double> gaps(const StochasticMabInstance& instance) {
  const double best = instance.best_mean();
  std::vector<double> out(instance.means.size());
  for (std::size_t i = 0; i < instance.means.size(); ++i)
    out[i] = best - instance.means[i];
  return out;
}

// One reward draw for the given arm. Truncated Gaussian uses symmetric
// truncation around the mean (to [mean - w, mean + w] with
// w = min(mean, 1 - mean)) so the declared mean is exact and the support
// stays inside [0,1].
inline double sample_stochastic_reward(const StochasticMabInstance& instance,
                                       int arm, SplitRng& rng) {
  if (arm < 0 || arm >= instance.num_arms())
    throw std::out_of_range("arm index out of range");
  const double mu = instance.means[static_cast<std::size_t>(arm)];
  switch (instance.reward_kind) {
    case RewardKind::kBernoulli:
      return rng.bernoulli(mu) ? 1.0 : 0.0;
    case RewardKind::kTruncatedGaussian: {
      const double w = std::min(mu, 1.0 - mu);
      if (w <= 0.0) return mu;
      for (int attempt = 0; attempt < 10000; ++attempt) {
        const double z = instance.sigma * rng.gaussian();
        if (std::abs(z) <= w) return mu + z;
      }
      return mu;  // sigma >> w; rejection is hopeless, fall back to the mean
    }
  }
  throw std::logic_error("unreachable reward kind");
}

enum class NoiseKind { kGaussian, kBoundedUniform, kNone };

// Stochastic linear bandit: reward of action a is <a, theta*> plus
// zero-mean 1-subgaussian noise. Norms of theta* and all actions are
// at most 1.
struct LinearBanditInstance {
  Eigen::VectorXd theta_star;
  std::vector<Eigen::VectorXd> actions;
  NoiseKind noise_kind = NoiseKind::kGaussian;
  double sigma = 1.0;  // Gaussian noise scale, must stay <= 1

  LinearBanditInstance(Eigen::VectorXd theta, std::vector<Eigen::VectorXd> acts,
                       NoiseKind noise = NoiseKind::kGaussian, double s = 1.0)
      : theta_star(std::move(theta)), actions(std::move(acts)),
        noise_kind(noise), sigma(s) {
    if (theta_star.size() < 1) throw std::invalid_argument("theta: dimension must be >= 1");
    if (theta_star.norm() > 1.0 + kNormTol)
      throw std::invalid_argument("theta: Euclidean norm must be <= 1");
    if (actions.empty()) throw std::invalid_argument("actions: need at least one action");
    for (const auto& a : actions) {
      if (a.size() != theta_star.size())
        throw std::invalid_argument("actions: dimension mismatch with theta");
      if (a.norm() > 1.0 + kNormTol)
        throw std::invalid_argument("actions: Euclidean norm must be <= 1");
    }
    if (noise_kind == NoiseKind::kGaussian && !(sigma > 0.0 && sigma <= 1.0))
      throw std::invalid_argument("sigma: Gaussian noise scale must lie in (0,1]");
  }

  int dim() const { return static_cast<int>(theta_star.size()); }
  int num_actions() const { return static_cast<int>(actions.size()); }

  double mean_reward(int action) const {
    if (action < 0 || action >= num_actions())
      throw std::out_of_range("action index out of range");
    return actions[static_cast<std::size_t>(action)].dot(theta_star);
  }

  double best_mean() const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : actions) best = std::max(best, a.dot(theta_star));
    return best;
  }

  static constexpr double kNormTol = 1e-9;
};

inline double sample_linear_noise(const LinearBanditInstance& instance, SplitRng& rng) {
  switch (instance.noise_kind) {
    case NoiseKind::kGaussian:       return instance.sigma * rng.gaussian();
    case NoiseKind::kBoundedUniform: return 2.0 * rng.uniform01() - 1.0;
    case NoiseKind::kNone:           return 0.0;
  }
  throw std::logic_error("unreachable noise kind");
}

// Reward for an arbitrary action vector (used by the infinite-set wrapper
// where the played point need not be a listed action).
inline double linear_reward(const LinearBanditInstance& instance,
                            const Eigen::VectorXd& action, SplitRng& rng) {
  if (action.size() != instance.theta_star.size())
    throw std::invalid_argument("action: dimension mismatch");
  if (action.norm() > 1.0 + LinearBanditInstance::kNormTol)
    throw std::invalid_argument("action: Euclidean norm must be <= 1");
  return action.dot(instance.theta_star) + sample_linear_noise(instance, rng);
}

inline double linear_reward(const LinearBanditInstance& instance, int action,
                            SplitRng& rng) {
  return instance.mean_reward(action) + sample_linear_noise(instance, rng);
}

// Fixed batch sizes t_1..t_B, committed before play.
struct BatchSchedule {
  std::vector<std::int64_t> sizes;

  explicit BatchSchedule(std::vector<std::int64_t> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw std::invalid_argument("schedule: need at least one batch");
    for (std::int64_t t : sizes)
      if (t < 1) throw std::invalid_argument("schedule: every batch size must be >= 1");
  }

  std::int64_t horizon() const {
    std::int64_t sum = 0;
    for (std::int64_t t : sizes) sum += t;
    return sum;
  }

  int num_batches() const { return static_cast<int>(sizes.size()); }
};

// A fully specified adversarial environment: reward of arm i at round t
// (t is 0-based here) is rewards[i*T + t], all entries in [0,1].
struct AdversarialRewardTable {
  AdversarialRewardTable(int num_arms, std::int64_t horizon,
                         std::string provenance_tag = "")
      : provenance(std::move(provenance_tag)), num_arms_(num_arms),
        horizon_(horizon),
        rewards_(static_cast<std::size_t>(num_arms) *
                     static_cast<std::size_t>(horizon),
                 0.0) {
    if (num_arms < 1) throw std::invalid_argument("table: need at least one arm");
    if (horizon < 1) throw std::invalid_argument("table: horizon must be >= 1");
  }

  int num_arms() const { return num_arms_; }
  std::int64_t horizon() const { return horizon_; }

  double at(int arm, std::int64_t t) const {
    check_index(arm, t);
    return rewards_[static_cast<std::size_t>(arm) * static_cast<std::size_t>(horizon_) +
                    static_cast<std::size_t>(t)];
  }

  void set(int arm, std::int64_t t, double reward) {
    check_index(arm, t);
    if (!(reward >= 0.0 && reward <= 1.0))
      throw std::invalid_argument("table: rewards must lie in [0,1]");
    rewards_[static_cast<std::size_t>(arm) * static_cast<std::size_t>(horizon_) +
             static_cast<std::size_t>(t)] = reward;
  }

  std::string provenance;

 private:
  void check_index(int arm, std::int64_t t) const {
    if (arm < 0 || arm >= num_arms_) throw std::out_of_range("table: arm out of range");
    if (t < 0 || t >= horizon_) throw std::out_of_range("table: round out of range");
  }

  int num_arms_;
  std::int64_t horizon_;
  std::vector<double> rewards_;
};

// Hard instance of the non-adaptive lower bound: per batch, one uniformly
// chosen arm gets reward 1 throughout the batch and the other gets 0.
inline AdversarialRewardTable make_batch_random_adversary(int num_arms,
                                                          const BatchSchedule& schedule,
                                                          SplitRng& rng) {
  if (num_arms != 2)
    throw std::invalid_argument("batch-random adversary supports exactly 2 arms");
  AdversarialRewardTable table(2, schedule.horizon(), "batchrandom");
  std::int64_t t = 0;
  for (std::int64_t size : schedule.sizes) {
    const int winner = rng.bernoulli(0.5) ? 1 : 0;
    for (std::int64_t j = 0; j < size; ++j, ++t) table.set(winner, t, 1.0);
  }
  return table;
}

// Hard instance of the adaptive lower bound: all rewards 0 until a switch
// round drawn uniformly from {1..T}; from there one uniformly chosen arm
// pays 1 to the end. switch_round is 1-based.
inline AdversarialRewardTable make_switching_adversary_at(std::int64_t horizon,
                                                          std::int64_t switch_round,
                                                          int winning_arm) {
  if (switch_round < 1 || switch_round > horizon)
    throw std::invalid_argument("switch round must lie in {1..T}");
  if (winning_arm < 0 || winning_arm > 1)
    throw std::invalid_argument("winning arm must be 0 or 1");
  AdversarialRewardTable table(2, horizon, "switching");
  for (std::int64_t t = switch_round - 1; t < horizon; ++t)
    table.set(winning_arm, t, 1.0);
  return table;
}

inline AdversarialRewardTable make_switching_adversary(int num_arms,
                                                       std::int64_t horizon,
                                                       SplitRng& rng) {
  if (num_arms != 2)
    throw std::invalid_argument("switching adversary supports exactly 2 arms");
  const std::int64_t tau =
      1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(horizon)));
  const int winner = rng.bernoulli(0.5) ? 1 : 0;
  return make_switching_adversary_at(horizon, tau, winner);
}

// CSV layout: header "arm,t1,..,tT", one row per arm.
inline void write_table_csv(const AdversarialRewardTable& table, std::ostream& out) {
  out << "arm";
  for (std::int64_t t = 1; t <= table.horizon(); ++t) out << ",t" << t;
  out << "\n";
  out.precision(17);
  for (int arm = 0; arm < table.num_arms(); ++arm) {
    out << arm;
    for (std::int64_t t = 0; t < table.horizon(); ++t) out << "," << table.at(arm, t);
    out << "\n";
  }
}

inline AdversarialRewardTable read_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("table csv: empty input");
  std::int64_t horizon = -1;  // count of t columns in the header
  {
    std::int64_t cols = 0;
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) ++cols;
    horizon = cols - 1;
  }
  if (horizon < 1) throw std::invalid_argument("table csv: no reward columns");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first) { first = false; continue; }  // arm index column
      row.push_back(std::stod(cell));
    }
    if (static_cast<std::int64_t>(row.size()) != horizon)
      throw std::invalid_argument("table csv: row length mismatch");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("table csv: no arm rows");

  AdversarialRewardTable table(static_cast<int>(rows.size()), horizon, "file");
  for (std::size_t arm = 0; arm < rows.size(); ++arm)
    for (std::int64_t t = 0; t < horizon; ++t)
      table.set(static_cast<int>(arm), t, rows[arm][static_cast<std::size_t>(t)]);
  return table;
}

}  // namespace batchbandits
