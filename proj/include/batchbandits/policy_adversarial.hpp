#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "batchbandits/env.hpp"
#include "batchbandits/regret.hpp"
#include "batchbandits/rng.hpp"

namespace batchbandits {

// B batches whose sizes differ by at most one: the first (T mod B) batches
// get ceil(T/B), the rest floor(T/B).
inline BatchSchedule make_uniform_schedule(std::int64_t horizon, int num_batches) {
  if (num_batches < 1 || static_cast<std::int64_t>(num_batches) > horizon)
    throw std::invalid_argument("B: need 1 <= B <= T");
  const std::int64_t base = horizon / num_batches;
  const std::int64_t extra = horizon % num_batches;
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(num_batches), base);
  for (std::int64_t i = 0; i < extra; ++i) sizes[static_cast<std::size_t>(i)] += 1;
  return BatchSchedule(std::move(sizes));
}

// Reward-form EXP3 whose sampling distribution is frozen within a batch;
// importance-weighted updates are applied only at batch boundaries.
struct Exp3DelayedState {
  std::vector<double> log_weights;
  double eta = 0.0;

  static Exp3DelayedState create(int num_arms, double eta) {
    if (num_arms < 1) throw std::invalid_argument("K: need at least one arm");
    if (!(eta > 0.0)) throw std::invalid_argument("eta: must be positive");
    Exp3DelayedState state;
    state.log_weights.assign(static_cast<std::size_t>(num_arms), 0.0);
    state.eta = eta;
    return state;
  }

  // Softmax of the log weights, max-subtracted against overflow.
  std::vector<double> distribution() const {
    const double max_lw = *std::max_element(log_weights.begin(), log_weights.end());
    std::vector<double> p(log_weights.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < log_weights.size(); ++i) {
      p[i] = std::exp(log_weights[i] - max_lw);
      sum += p[i];
    }
    for (double& pi : p) pi /= sum;
    return p;
  }
};

// Learning rate for the acceptance runs: classic EXP3 tuning
// sqrt(ln K / (K T)). Desk-scale horizons leave the delay-inflated rate
// sqrt(ln K / (T (K + ceil(T/B)))) in a near-uniform regime, so the
// classic rate is the default; callers can override.
inline double default_exp3_eta(int num_arms, std::int64_t horizon) {
  return std::sqrt(std::log(static_cast<double>(num_arms)) /
                   (static_cast<double>(num_arms) * static_cast<double>(horizon)));
}

inline std::pair<int, double> exp3_sample(const Exp3DelayedState& state, SplitRng& rng) {
  const std::vector<double> p = state.distribution();
  const double u = rng.uniform01();
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    cum += p[i];
    if (u < cum) return {static_cast<int>(i), p[i]};
  }
  return {static_cast<int>(p.size()) - 1, p.back()};
}

struct Exp3Observation {
  std::int64_t round = 0;
  int arm = 0;
  double reward = 0.0;
  double probability = 0.0;  // probability the arm had at play time
};

// Processes one completed batch: each observation contributes the
// importance-weighted estimate reward/probability to its arm's log weight.
// Probabilities are floored at 1e-12 in the division only.
inline void exp3_delayed_update(Exp3DelayedState& state,
                                const std::vector<Exp3Observation>& batch_observations) {
  for (const auto& obs : batch_observations) {
    if (obs.arm < 0 || obs.arm >= static_cast<int>(state.log_weights.size()))
      throw std::logic_error("exp3 update: arm out of range");
    if (!(obs.probability > 0.0))
      throw std::logic_error("exp3 update: non-positive play probability");
    const double estimate = obs.reward / std::max(obs.probability, 1e-12);
    state.log_weights[static_cast<std::size_t>(obs.arm)] += state.eta * estimate;
  }
}

struct AdversarialRunResult {
  std::vector<int> actions;
  RegretTrace trace;
  std::vector<std::int64_t> schedule_sizes;
  std::vector<std::vector<double>> batch_distributions;  // frozen dist per batch
};

// Non-adaptive batched adversarial player: uniform schedule, i.i.d. draws
// from the frozen distribution inside each batch, update at the boundary.
inline AdversarialRunResult run_batched_adversarial(const AdversarialRewardTable& table,
                                                    std::int64_t horizon, int num_batches,
                                                    SplitRng& rng,
                                                    std::optional<double> eta = std::nullopt) {
  if (table.horizon() != horizon)
    throw std::invalid_argument("table horizon must match T");
  const int k = table.num_arms();
  const BatchSchedule schedule = make_uniform_schedule(horizon, num_batches);
  auto state = Exp3DelayedState::create(k, eta.value_or(default_exp3_eta(k, horizon)));

  AdversarialRunResult result;
  result.schedule_sizes = schedule.sizes;
  result.actions.reserve(static_cast<std::size_t>(horizon));
  std::int64_t t = 0;
  for (std::int64_t size : schedule.sizes) {
    result.batch_distributions.push_back(state.distribution());
    std::vector<Exp3Observation> observations;
    observations.reserve(static_cast<std::size_t>(size));
    for (std::int64_t j = 0; j < size; ++j, ++t) {
      const auto [arm, prob] = exp3_sample(state, rng);
      result.actions.push_back(arm);
      observations.push_back({t, arm, table.at(arm, t), prob});
    }
    exp3_delayed_update(state, observations);
  }
  result.trace = compute_adversarial_regret(result.actions, table);
  return result;
}

}  // namespace batchbandits
