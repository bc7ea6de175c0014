#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracles {

// Pearson chi-square statistic for observed counts against expected
// probabilities.
inline double chi_square_stat(const std::vector<std::int64_t>& observed,
                              const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size())
    throw std::invalid_argument("chi_square_stat: size mismatch");
  std::int64_t total = 0;
  for (std::int64_t c : observed) total += c;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

// Upper 0.001 quantiles of the chi-square distribution (standard tables);
// a statistic below the quantile means p > 0.001.
inline constexpr double kChi2Crit1DofP001 = 10.828;
inline constexpr double kChi2Crit2DofP001 = 13.816;
inline constexpr double kChi2Crit9DofP001 = 27.877;

// Exact expected regret of any non-adaptive player on the batch-random
// two-arm adversary: E|X|/2 with X = sum_i t_i R_i, enumerated over all
// 2^B sign patterns. Feasible for B <= 20 or so.
inline double exact_batch_random_regret(const std::vector<std::int64_t>& batch_sizes) {
  const std::size_t b = batch_sizes.size();
  if (b == 0 || b > 24) throw std::invalid_argument("enumeration: need 1 <= B <= 24");
  double sum_abs = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << b;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double x = 0.0;
    for (std::size_t i = 0; i < b; ++i)
      x += (mask >> i & 1u) ? static_cast<double>(batch_sizes[i])
                            : -static_cast<double>(batch_sizes[i]);
    sum_abs += x < 0.0 ? -x : x;
  }
  return sum_abs / static_cast<double>(patterns) / 2.0;
}

// Dense leverage scan: builds V(pi) explicitly, inverts it outright, and
// evaluates a^T V^-1 a for every action. Lowest index wins ties.
inline std::pair<int, double> brute_force_max_leverage(
    const std::vector<Eigen::VectorXd>& actions, const std::vector<int>& support,
    const std::vector<double>& weights) {
  const Eigen::Index d = actions.at(0).size();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t s = 0; s < support.size(); ++s) {
    const auto& a = actions.at(static_cast<std::size_t>(support[s]));
    v += weights[s] * (a * a.transpose());
  }
  const Eigen::MatrixXd v_inv = v.fullPivLu().inverse();
  int best = 0;
  double best_val = actions[0].dot(v_inv * actions[0]);
  for (std::size_t i = 1; i < actions.size(); ++i) {
    const double val = actions[i].dot(v_inv * actions[i]);
    if (val > best_val) {
      best_val = val;
      best = static_cast<int>(i);
    }
  }
  return {best, best_val};
}

}  // namespace oracles
