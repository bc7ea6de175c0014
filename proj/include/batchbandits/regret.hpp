#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "batchbandits/env.hpp"

namespace batchbandits {

enum class RegretKind { kPseudo, kAdversarial };

// Cumulative regret per round. For stochastic experiments this is
// pseudo-regret (true means applied to the realized actions). For
// adversarial experiments `cumulative` measures against the global
// hindsight-best arm (the reported regret) and `running_hindsight`
// against the best arm of each prefix.
struct RegretTrace {
  RegretKind kind = RegretKind::kPseudo;
  std::vector<double> cumulative;
  std::vector<double> running_hindsight;

  double final_regret() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

inline RegretTrace compute_pseudo_regret(const std::vector<int>& actions,
                                         const StochasticMabInstance& instance) {
  const double best = instance.best_mean();
  RegretTrace trace;
  trace.kind = RegretKind::kPseudo;
  trace.cumulative.reserve(actions.size());
  double cum = 0.0;
  for (int a : actions) {
    if (a < 0 || a >= instance.num_arms())
      throw std::out_of_range("pseudo-regret: arm index out of range");
    cum += best - instance.means[static_cast<std::size_t>(a)];
    trace.cumulative.push_back(cum);
  }
  return trace;
}

inline RegretTrace compute_pseudo_regret(const std::vector<int>& action_indices,
                                         const LinearBanditInstance& instance) {
  const double best = instance.best_mean();
  RegretTrace trace;
  trace.kind = RegretKind::kPseudo;
  trace.cumulative.reserve(action_indices.size());
  double cum = 0.0;
  for (int a : action_indices) {
    cum += best - instance.mean_reward(a);
    trace.cumulative.push_back(cum);
  }
  return trace;
}

inline RegretTrace compute_adversarial_regret(const std::vector<int>& actions,
                                              const AdversarialRewardTable& table) {
  if (static_cast<std::int64_t>(actions.size()) != table.horizon())
    throw std::invalid_argument("adversarial regret: action count must equal the horizon");
  const int k = table.num_arms();
  std::vector<double> arm_cum(static_cast<std::size_t>(k), 0.0);
  std::vector<double> player_cum(actions.size());
  std::vector<double> running(actions.size());
  double player = 0.0;
  for (std::int64_t t = 0; t < table.horizon(); ++t) {
    const int a = actions[static_cast<std::size_t>(t)];
    if (a < 0 || a >= k) throw std::out_of_range("adversarial regret: arm out of range");
    player += table.at(a, t);
    player_cum[static_cast<std::size_t>(t)] = player;
    double best_prefix = 0.0;
    for (int i = 0; i < k; ++i) {
      arm_cum[static_cast<std::size_t>(i)] += table.at(i, t);
      best_prefix = std::max(best_prefix, arm_cum[static_cast<std::size_t>(i)]);
    }
    running[static_cast<std::size_t>(t)] = best_prefix - player;
  }
  int best_arm = 0;
  for (int i = 1; i < k; ++i)
    if (arm_cum[static_cast<std::size_t>(i)] > arm_cum[static_cast<std::size_t>(best_arm)])
      best_arm = i;

  RegretTrace trace;
  trace.kind = RegretKind::kAdversarial;
  trace.running_hindsight = std::move(running);
  trace.cumulative.resize(actions.size());
  double best_cum = 0.0;
  for (std::int64_t t = 0; t < table.horizon(); ++t) {
    best_cum += table.at(best_arm, t);
    trace.cumulative[static_cast<std::size_t>(t)] =
        best_cum - player_cum[static_cast<std::size_t>(t)];
  }
  return trace;
}

// Expected-regret bound for batched elimination on a stochastic instance:
// 9 * T^(1/B) * ln(2KTB) * sum over positive gaps of 1/gap.
inline double theoretical_bound_mab(const StochasticMabInstance& instance,
                                    std::int64_t horizon, int num_batches) {
  const std::vector<double> deltas = gaps(instance);
  double inv_gap_sum = 0.0;
  for (double delta : deltas)
    if (delta > 0.0) inv_gap_sum += 1.0 / delta;
  if (inv_gap_sum == 0.0) return 0.0;
  const double t = static_cast<double>(horizon);
  const double log_term =
      std::log(2.0 * static_cast<double>(instance.num_arms()) * t *
               static_cast<double>(num_batches));
  return 9.0 * std::pow(t, 1.0 / static_cast<double>(num_batches)) * log_term * inv_gap_sum;
}

}  // namespace batchbandits
