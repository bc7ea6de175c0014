#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "batchbandits/design.hpp"
#include "batchbandits/env.hpp"
#include "batchbandits/regret.hpp"
#include "batchbandits/rng.hpp"

namespace batchbandits {

// Elimination filter: keep actions whose estimated value is within 2*eps of
// the best estimate (strict removal below the cutoff). Returns surviving
// indices into active_actions, in order.
inline std::vector<int> eliminate_linear(const std::vector<Eigen::VectorXd>& active_actions,
                                         const Eigen::VectorXd& theta_hat, double eps) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> scores(active_actions.size());
  for (std::size_t i = 0; i < active_actions.size(); ++i) {
    scores[i] = active_actions[i].dot(theta_hat);
    best = std::max(best, scores[i]);
  }
  std::vector<int> survivors;
  for (std::size_t i = 0; i < active_actions.size(); ++i)
    if (!(scores[i] < best - 2.0 * eps)) survivors.push_back(static_cast<int>(i));
  return survivors;
}

struct LinearBatchPlan {
  bool exploit = false;
  Design design;
  PullMultiset multiset;  // counts aligned with the active action list
  std::int64_t total_rounds = 0;
};

// Exploration plan for one batch over the (projected) active set: a fresh
// approximate G-optimal design rounded at (eps, delta). Signals exploit when
// a single action remains or the rounded total exceeds the budget.
inline LinearBatchPlan plan_linear_batch(const std::vector<Eigen::VectorXd>& active_projected,
                                         double eps, double delta,
                                         std::int64_t remaining) {
  LinearBatchPlan plan;
  if (remaining <= 0 || active_projected.size() <= 1) {
    plan.exploit = true;
    plan.total_rounds = remaining;
    return plan;
  }
  plan.design = frank_wolfe_goptimal(active_projected);
  plan.multiset = round_design(plan.design, static_cast<int>(active_projected.size()),
                               eps, delta);
  plan.total_rounds = plan.multiset.total();
  if (plan.total_rounds > remaining) {
    plan.exploit = true;
    plan.total_rounds = remaining;
  }
  return plan;
}

struct LinearBatchRecord {
  int index = 0;
  std::int64_t size = 0;
  double eps = 0.0;
  double g = 0.0;
  int working_dim = 0;
  std::vector<int> active_before;  // original action indices
  std::vector<double> scores;      // <a, theta_hat> per active_before entry
  std::vector<int> eliminated;     // original action indices
};

struct LinearRunResult {
  RegretTrace trace;
  int batches_used = 0;
  std::vector<int> actions;  // indices into the instance action list
  std::vector<int> final_active;
  double q = 1.0;
  std::vector<LinearBatchRecord> batch_log;
};

// Batched elimination for stochastic linear bandits. Exploration batches
// use the rounded G-optimal design over the active set with delta = 1/(K T^2)
// and eps_i = sqrt(d ln(K T^2) / q^i), q = (T/c)^(1/B); theta_hat is
// re-estimated from each batch alone. The last batch plays the action
// maximizing <a, theta_hat>. The elimination schedule keeps the initial
// effective dimension even if the survivors' span shrinks.
inline LinearRunResult run_batched_linear(const LinearBanditInstance& instance,
                                          std::int64_t horizon, int num_batches,
                                          SplitRng& rng) {
  if (num_batches < 1 || static_cast<std::int64_t>(num_batches) > horizon)
    throw std::invalid_argument("B: need 1 <= B <= T");
  const int k = instance.num_actions();
  const double t_real = static_cast<double>(horizon);
  const double delta = 1.0 / (static_cast<double>(k) * t_real * t_real);
  const double log_kt2 = std::log(static_cast<double>(k) * t_real * t_real);

  const int d_schedule = project_to_span(instance.actions).effective_dim;
  const double q = std::pow(t_real / kDesignSizingC, 1.0 / static_cast<double>(num_batches));

  LinearRunResult result;
  result.q = q;
  result.actions.reserve(static_cast<std::size_t>(horizon));

  std::vector<int> active(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) active[static_cast<std::size_t>(a)] = a;
  std::vector<double> exploit_score(static_cast<std::size_t>(k), 0.0);
  std::int64_t remaining = horizon;

  for (int i = 1; i <= num_batches - 1 && remaining > 0; ++i) {
    const double eps =
        std::sqrt(static_cast<double>(d_schedule) * log_kt2 / std::pow(q, i));
    std::vector<Eigen::VectorXd> active_vectors;
    active_vectors.reserve(active.size());
    for (int a : active) active_vectors.push_back(instance.actions[static_cast<std::size_t>(a)]);
    const ProjectedActions proj = project_to_span(active_vectors);

    const LinearBatchPlan plan = plan_linear_batch(proj.projected, eps, delta, remaining);
    if (plan.exploit) break;

    LinearBatchRecord record;
    record.index = i;
    record.size = plan.total_rounds;
    record.eps = eps;
    record.g = plan.design.g_value;
    record.working_dim = proj.effective_dim;
    record.active_before = active;

    std::vector<Eigen::VectorXd> pulled;
    std::vector<double> rewards;
    pulled.reserve(static_cast<std::size_t>(plan.total_rounds));
    rewards.reserve(static_cast<std::size_t>(plan.total_rounds));
    for (std::size_t local = 0; local < active.size(); ++local) {
      const std::int64_t count = plan.multiset.counts[local];
      for (std::int64_t j = 0; j < count; ++j) {
        const int original = active[local];
        result.actions.push_back(original);
        pulled.push_back(proj.projected[local]);
        rewards.push_back(linear_reward(instance, original, rng));
      }
    }
    remaining -= plan.total_rounds;
    result.batches_used += 1;

    const LeastSquaresEstimate estimate = least_squares(pulled, rewards);
    record.scores.resize(active.size());
    for (std::size_t local = 0; local < active.size(); ++local) {
      record.scores[local] = proj.projected[local].dot(estimate.theta_hat);
      exploit_score[static_cast<std::size_t>(active[local])] = record.scores[local];
    }
    const std::vector<int> survivors =
        eliminate_linear(proj.projected, estimate.theta_hat, eps);
    std::vector<int> next_active;
    next_active.reserve(survivors.size());
    for (int local : survivors) next_active.push_back(active[static_cast<std::size_t>(local)]);
    for (int a : active)
      if (std::find(next_active.begin(), next_active.end(), a) == next_active.end())
        record.eliminated.push_back(a);
    active = std::move(next_active);
    result.batch_log.push_back(std::move(record));
  }

  if (remaining > 0) {
    int exploit_arm = active.front();
    for (int a : active)
      if (exploit_score[static_cast<std::size_t>(a)] >
          exploit_score[static_cast<std::size_t>(exploit_arm)])
        exploit_arm = a;
    for (std::int64_t t = 0; t < remaining; ++t) result.actions.push_back(exploit_arm);
    result.batches_used += 1;
  }

  result.final_active = active;
  result.trace = compute_pseudo_regret(result.actions, instance);
  return result;
}

struct InfiniteLinearResult {
  LinearRunResult net_run;      // run over the net, regret vs the net's best
  std::vector<int> net;         // candidate indices forming the (1/T)-net
  RegretTrace trace;            // regret vs the best of all candidates
};

// Infinite-action-set wrapper: reduces a dense candidate set to a (1/T)-net
// and runs the finite algorithm on it. Regret is reported against the best
// candidate; the net approximation costs at most 1/T per round.
inline InfiniteLinearResult run_infinite_linear(const LinearBanditInstance& candidates,
                                                std::int64_t horizon, int num_batches,
                                                SplitRng& rng) {
  InfiniteLinearResult result;
  result.net = epsilon_net(candidates.actions, 1.0 / static_cast<double>(horizon));
  std::vector<Eigen::VectorXd> net_actions;
  net_actions.reserve(result.net.size());
  for (int idx : result.net)
    net_actions.push_back(candidates.actions[static_cast<std::size_t>(idx)]);
  const LinearBanditInstance net_instance(candidates.theta_star, std::move(net_actions),
                                          candidates.noise_kind, candidates.sigma);
  result.net_run = run_batched_linear(net_instance, horizon, num_batches, rng);

  const double best = candidates.best_mean();
  result.trace.kind = RegretKind::kPseudo;
  result.trace.cumulative.reserve(result.net_run.actions.size());
  double cum = 0.0;
  for (int net_idx : result.net_run.actions) {
    cum += best - net_instance.mean_reward(net_idx);
    result.trace.cumulative.push_back(cum);
  }
  return result;
}

}  // namespace batchbandits
