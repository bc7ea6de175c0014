#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "batchbandits/env.hpp"
#include "batchbandits/regret.hpp"
#include "batchbandits/rng.hpp"

namespace batchbandits {

// floor(q^i) with a snap to the nearest integer when the power is within
// relative 1e-9 of it, so q = T^(1/B) yields floor(q^B) = T exactly instead
// of drifting one below. Saturates at 2^62.
inline std::int64_t floor_pow(double q, int i) {
  const double y = std::pow(q, static_cast<double>(i));
  if (y >= 4.6e18) return std::int64_t{1} << 62;
  const double snapped = std::nearbyint(y);
  if (std::abs(y - snapped) <= 1e-9 * std::max(1.0, snapped))
    return static_cast<std::int64_t>(snapped);
  return static_cast<std::int64_t>(std::floor(y));
}

// State of batched arm elimination. Estimates are running means over every
// pull of the arm; per-active-arm cumulative pulls after batch i are
// c_i = sum_{j<=i} floor(q^j).
struct MabEliminationState {
  int num_arms = 0;
  std::int64_t horizon = 0;
  int num_batches = 0;
  double q = 1.0;
  double elimination_log = 0.0;  // ln(2KTB)

  std::vector<int> active;
  std::vector<double> reward_sum;
  std::vector<std::int64_t> pulls;
  int batch_index = 1;
  std::int64_t cumulative_per_arm = 0;  // c_{batch_index - 1}
  std::int64_t remaining = 0;

  static MabEliminationState create(int num_arms, std::int64_t horizon, int num_batches,
                                    std::optional<double> q_override = std::nullopt) {
    if (num_arms < 1) throw std::invalid_argument("K: need at least one arm");
    if (num_batches < 1 || static_cast<std::int64_t>(num_batches) > horizon)
      throw std::invalid_argument("B: need 1 <= B <= T");
    MabEliminationState state;
    state.num_arms = num_arms;
    state.horizon = horizon;
    state.num_batches = num_batches;
    if (q_override) {
      if (!(*q_override >= 1.0)) throw std::invalid_argument("q: must be >= 1");
      std::int64_t covered = 0;
      for (int i = 1; i <= num_batches && covered < horizon; ++i)
        covered += floor_pow(*q_override, i);
      if (covered < horizon)
        throw std::invalid_argument("q: sum of floor(q^i) over B batches must reach T");
      state.q = *q_override;
    } else {
      state.q = std::pow(static_cast<double>(horizon),
                         1.0 / static_cast<double>(num_batches));
    }
    state.elimination_log = std::log(2.0 * static_cast<double>(num_arms) *
                                     static_cast<double>(horizon) *
                                     static_cast<double>(num_batches));
    state.active.resize(static_cast<std::size_t>(num_arms));
    for (int a = 0; a < num_arms; ++a) state.active[static_cast<std::size_t>(a)] = a;
    state.reward_sum.assign(static_cast<std::size_t>(num_arms), 0.0);
    state.pulls.assign(static_cast<std::size_t>(num_arms), 0);
    state.remaining = horizon;
    return state;
  }

  double estimate(int arm) const {
    const auto i = static_cast<std::size_t>(arm);
    return pulls[i] == 0 ? 0.0 : reward_sum[i] / static_cast<double>(pulls[i]);
  }

  // Empirical best among active arms, lowest index on ties.
  int best_active() const {
    int best = active.front();
    for (int a : active)
      if (estimate(a) > estimate(best)) best = a;
    return best;
  }

  double elimination_threshold(std::int64_t pulls_per_arm) const {
    return std::sqrt(2.0 * elimination_log / static_cast<double>(pulls_per_arm));
  }

  bool finished() const { return remaining == 0; }
};

struct MabBatchPlan {
  bool exploit = false;
  int exploit_arm = -1;
  std::vector<std::pair<int, std::int64_t>> pulls;  // (arm, repetitions)
  std::int64_t total_rounds = 0;
};

// Next batch: each active arm floor(q^i) times while that fits the budget
// and i <= B-1; otherwise a single-arm exploit batch of all remaining
// rounds. An empty exploit plan (remaining == 0) signals completion.
inline MabBatchPlan plan_mab_batch(const MabEliminationState& state) {
  MabBatchPlan plan;
  if (state.remaining == 0) {
    plan.exploit = true;
    plan.exploit_arm = state.best_active();
    return plan;
  }
  if (state.batch_index <= state.num_batches - 1) {
    const std::int64_t reps = floor_pow(state.q, state.batch_index);
    const std::int64_t needed = reps * static_cast<std::int64_t>(state.active.size());
    if (needed <= state.remaining) {
      for (int a : state.active) plan.pulls.emplace_back(a, reps);
      plan.total_rounds = needed;
      return plan;
    }
  }
  plan.exploit = true;
  plan.exploit_arm = state.best_active();
  plan.total_rounds = state.remaining;
  return plan;
}

// Folds one completed exploration batch into the state and applies the
// elimination rule: drop any active arm whose estimate is below the best
// estimate by more than sqrt(2 ln(2KTB) / c_i). Returns the removed arms.
inline std::vector<int> update_mab(MabEliminationState& state,
                                   const std::vector<std::pair<int, double>>& observations) {
  for (const auto& [arm, reward] : observations) {
    if (std::find(state.active.begin(), state.active.end(), arm) == state.active.end())
      throw std::logic_error("update_mab: observation for inactive arm");
    state.reward_sum[static_cast<std::size_t>(arm)] += reward;
    state.pulls[static_cast<std::size_t>(arm)] += 1;
  }
  state.remaining -= static_cast<std::int64_t>(observations.size());
  state.cumulative_per_arm += floor_pow(state.q, state.batch_index);

  const double threshold = state.elimination_threshold(state.cumulative_per_arm);
  const double best = state.estimate(state.best_active());
  std::vector<int> eliminated;
  std::vector<int> survivors;
  for (int a : state.active) {
    if (state.estimate(a) < best - threshold)
      eliminated.push_back(a);
    else
      survivors.push_back(a);
  }
  state.active = std::move(survivors);
  state.batch_index += 1;
  return eliminated;
}

struct MabBatchRecord {
  int index = 0;
  std::int64_t size = 0;
  bool exploit = false;
  int exploit_arm = -1;
  std::vector<int> active_before;
  double threshold = 0.0;  // elimination threshold applied after the batch
  std::vector<int> eliminated;
};

struct MabRunResult {
  RegretTrace trace;
  int batches_used = 0;
  std::vector<std::int64_t> pull_counts;
  std::vector<int> final_active;
  std::vector<int> actions;
  double q = 1.0;
  std::vector<MabBatchRecord> batch_log;
};

// Full run of batched arm elimination: exactly T pulls in at most B batches.
inline MabRunResult run_batched_mab(const StochasticMabInstance& instance,
                                    std::int64_t horizon, int num_batches,
                                    std::optional<double> q_override, SplitRng& rng) {
  auto state = MabEliminationState::create(instance.num_arms(), horizon, num_batches,
                                           q_override);
  MabRunResult result;
  result.q = state.q;
  result.actions.reserve(static_cast<std::size_t>(horizon));

  while (!state.finished()) {
    const MabBatchPlan plan = plan_mab_batch(state);
    if (plan.total_rounds == 0) break;
    MabBatchRecord record;
    record.index = state.batch_index;
    record.size = plan.total_rounds;
    record.active_before = state.active;
    if (plan.exploit) {
      record.exploit = true;
      record.exploit_arm = plan.exploit_arm;
      for (std::int64_t t = 0; t < plan.total_rounds; ++t)
        result.actions.push_back(plan.exploit_arm);
      state.remaining = 0;
      result.batches_used += 1;
      result.batch_log.push_back(std::move(record));
      break;
    }
    std::vector<std::pair<int, double>> observations;
    observations.reserve(static_cast<std::size_t>(plan.total_rounds));
    for (const auto& [arm, reps] : plan.pulls) {
      for (std::int64_t t = 0; t < reps; ++t) {
        result.actions.push_back(arm);
        observations.emplace_back(arm, sample_stochastic_reward(instance, arm, rng));
      }
    }
    record.eliminated = update_mab(state, observations);
    record.threshold = state.elimination_threshold(state.cumulative_per_arm);
    result.batches_used += 1;
    result.batch_log.push_back(std::move(record));
  }

  result.final_active = state.active;
  result.pull_counts.assign(static_cast<std::size_t>(instance.num_arms()), 0);
  for (int a : result.actions) result.pull_counts[static_cast<std::size_t>(a)] += 1;
  result.trace = compute_pseudo_regret(result.actions, instance);
  return result;
}

struct UcbRunResult {
  RegretTrace trace;
  std::vector<std::int64_t> pull_counts;
  std::vector<int> actions;
};

// Sequential UCB1 comparison baseline: optimism index mean + sqrt(2 ln t / n).
inline UcbRunResult ucb_baseline(const StochasticMabInstance& instance,
                                 std::int64_t horizon, SplitRng& rng) {
  const int k = instance.num_arms();
  UcbRunResult result;
  result.pull_counts.assign(static_cast<std::size_t>(k), 0);
  result.actions.reserve(static_cast<std::size_t>(horizon));
  std::vector<double> sums(static_cast<std::size_t>(k), 0.0);

  for (std::int64_t t = 1; t <= horizon; ++t) {
    int arm;
    if (t <= k) {
      arm = static_cast<int>(t - 1);
    } else {
      arm = 0;
      double best_index = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < k; ++a) {
        const auto i = static_cast<std::size_t>(a);
        const double n = static_cast<double>(result.pull_counts[i]);
        const double index = sums[i] / n + std::sqrt(2.0 * std::log(static_cast<double>(t)) / n);
        if (index > best_index) {
          best_index = index;
          arm = a;
        }
      }
    }
    const double reward = sample_stochastic_reward(instance, arm, rng);
    sums[static_cast<std::size_t>(arm)] += reward;
    result.pull_counts[static_cast<std::size_t>(arm)] += 1;
    result.actions.push_back(arm);
  }
  result.trace = compute_pseudo_regret(result.actions, instance);
  return result;
}

}  // namespace batchbandits
