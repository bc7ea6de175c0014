#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace batchbandits {

struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative singular-value cutoff for all rank decisions.
inline constexpr double kRankTol = 1e-8;

// Multi-set sizing constants: a rounded design has between
// c*d*log(1/delta)/eps^2 and C*d*log(1/delta)/eps^2 pulls (plus support-size
// rounding slack). Any fixed pair only rescales the batch schedule.
inline constexpr double kDesignSizingC = 2.0;
inline constexpr double kDesignSizingUpper = 4.0;

// A probability distribution over actions approximating the G-optimal
// design, together with the achieved max leverage g = max_a ||a||^2_{V^-1}.
struct Design {
  std::vector<int> support;     // indices into the action list
  std::vector<double> weights;  // positive, aligned with support, sum to 1
  double g_value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Design rounded to integer pull counts, one entry per action.
struct PullMultiset {
  std::vector<std::int64_t> counts;

  std::int64_t total() const {
    std::int64_t sum = 0;
    for (std::int64_t c : counts) sum += c;
    return sum;
  }
};

struct LeastSquaresEstimate {
  Eigen::VectorXd theta_hat;
  Eigen::MatrixXd gram;
  double condition = 0.0;  // ratio of extreme Gram eigenvalues
};

namespace detail {

inline Eigen::MatrixXd design_information(const std::vector<Eigen::VectorXd>& actions,
                                          const std::vector<int>& support,
                                          const std::vector<double>& weights) {
  const Eigen::Index d = actions.at(0).size();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t s = 0; s < support.size(); ++s) {
    const auto& a = actions.at(static_cast<std::size_t>(support[s]));
    v.noalias() += weights[s] * (a * a.transpose());
  }
  return v;
}

inline std::string json_number(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace detail

// Leverage maximizer: index and value of max_a ||a||^2_{V(pi)^-1}.
// Ties go to the lowest index.
inline std::pair<int, double> max_leverage(const std::vector<Eigen::VectorXd>& actions,
                                           const Design& design) {
  if (actions.empty()) throw std::invalid_argument("max_leverage: no actions");
  const Eigen::MatrixXd v = detail::design_information(actions, design.support, design.weights);
  Eigen::LLT<Eigen::MatrixXd> llt(v);
  if (llt.info() != Eigen::Success)
    throw RankError("max_leverage: design information matrix is singular");
  int best = 0;
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const double lev = actions[i].dot(llt.solve(actions[i]));
    if (lev > g) {
      g = lev;
      best = static_cast<int>(i);
    }
  }
  return {best, g};
}

// Frank-Wolfe ascent of log det V(pi) starting from the uniform design.
// Each step moves mass gamma = (g/d - 1)/(g - 1) onto the current leverage
// maximizer; stops once g <= d*(1+tol). On iteration exhaustion the best
// iterate is returned with converged = false.
inline Design frank_wolfe_goptimal(
    const std::vector<Eigen::VectorXd>& actions, double tol = 0.01,
    int max_iter = 100000,
    const std::function<void(int, double, double)>& observer = nullptr) {
  if (actions.empty()) throw std::invalid_argument("design: no actions");
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("design: tol must lie in (0,1)");
  const Eigen::Index d = actions[0].size();
  for (const auto& a : actions)
    if (a.size() != d) throw std::invalid_argument("design: action dimension mismatch");

  const std::size_t k = actions.size();
  Eigen::MatrixXd action_matrix(d, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) action_matrix.col(static_cast<Eigen::Index>(i)) = actions[i];

  std::vector<double> weights(k, 1.0 / static_cast<double>(k));
  std::vector<double> best_weights = weights;
  double best_g = std::numeric_limits<double>::infinity();
  const double target = static_cast<double>(d) * (1.0 + tol);

  bool converged = false;
  int iterations = 0;
  double g = 0.0;
  for (int iter = 0; iter <= max_iter; ++iter) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < k; ++i) {
      if (weights[i] > 0.0) {
        const auto a = action_matrix.col(static_cast<Eigen::Index>(i));
        v.noalias() += weights[i] * (a * a.transpose());
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(v);
    if (llt.info() != Eigen::Success)
      throw RankError("design: actions do not span the working space");

    const Eigen::MatrixXd solved = llt.solve(action_matrix);
    int argmax = 0;
    g = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double lev =
          action_matrix.col(static_cast<Eigen::Index>(i)).dot(solved.col(static_cast<Eigen::Index>(i)));
      if (lev > g) {
        g = lev;
        argmax = static_cast<int>(i);
      }
    }
    if (observer) {
      double log_det = 0.0;
      const auto& l = llt.matrixLLT();
      for (Eigen::Index j = 0; j < d; ++j) log_det += 2.0 * std::log(l(j, j));
      observer(iter, g, log_det);
    }
    if (g < best_g) {
      best_g = g;
      best_weights = weights;
    }
    iterations = iter;
    if (g <= target) {
      converged = true;
      break;
    }
    if (iter == max_iter) break;

    const double gamma = (g / static_cast<double>(d) - 1.0) / (g - 1.0);
    for (double& w : weights) w *= (1.0 - gamma);
    weights[static_cast<std::size_t>(argmax)] += gamma;
  }

  const std::vector<double>& final_weights = converged ? weights : best_weights;
  Design design;
  design.converged = converged;
  design.iterations = iterations;
  design.g_value = converged ? g : best_g;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (final_weights[i] > 0.0) {
      design.support.push_back(static_cast<int>(i));
      design.weights.push_back(final_weights[i]);
      sum += final_weights[i];
    }
  }
  for (double& w : design.weights) w /= sum;
  return design;
}

// Rounds a design into pull counts meeting the confidence-width target:
// with n = ceil(2 g ln(2/delta) / eps^2) total pulls, per-action leverage
// is at most g/n, so |<a, theta_hat - theta*>| <= eps with probability
// >= 1 - delta per action. Per-support ceilings may overshoot n by at most
// the support size.
inline PullMultiset round_design(const Design& design, int num_actions,
                                 double eps, double delta) {
  if (!(eps > 0.0)) throw std::invalid_argument("round_design: eps must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("round_design: delta must lie in (0,1)");
  const double raw = 2.0 * design.g_value * std::log(2.0 / delta) / (eps * eps);
  const std::int64_t n = static_cast<std::int64_t>(std::ceil(raw));
  PullMultiset multiset;
  multiset.counts.assign(static_cast<std::size_t>(num_actions), 0);
  for (std::size_t s = 0; s < design.support.size(); ++s) {
    multiset.counts.at(static_cast<std::size_t>(design.support[s])) =
        static_cast<std::int64_t>(std::ceil(design.weights[s] * static_cast<double>(n)));
  }
  return multiset;
}

// theta_hat solving the normal equations Gram * theta = sum r_i a_i via
// LDLT. Rank of the Gram matrix is checked against the relative
// eigenvalue cutoff before solving.
inline LeastSquaresEstimate least_squares(const std::vector<Eigen::VectorXd>& pulled_actions,
                                          const std::vector<double>& rewards) {
  if (pulled_actions.empty()) throw std::invalid_argument("least_squares: no data");
  if (pulled_actions.size() != rewards.size())
    throw std::invalid_argument("least_squares: actions/rewards length mismatch");
  const Eigen::Index d = pulled_actions[0].size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < pulled_actions.size(); ++i) {
    const auto& a = pulled_actions[i];
    if (a.size() != d) throw std::invalid_argument("least_squares: dimension mismatch");
    gram.noalias() += a * a.transpose();
    rhs.noalias() += rewards[i] * a;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double max_ev = eig.eigenvalues().maxCoeff();
  const double min_ev = eig.eigenvalues().minCoeff();
  if (!(max_ev > 0.0) || min_ev < kRankTol * max_ev)
    throw RankError("least_squares: pulled actions do not span the working space");

  LeastSquaresEstimate estimate;
  estimate.gram = gram;
  estimate.condition = max_ev / min_ev;
  estimate.theta_hat = gram.ldlt().solve(rhs);
  return estimate;
}

// Greedy eps-net, scanning from index 0: a point joins the net when it is
// farther than eps from every current net point. The result covers every
// input within eps, is pairwise more than eps apart, and preserves input
// order (an already-separated input maps to itself). Returns indices into
// the input.
inline std::vector<int> epsilon_net(const std::vector<Eigen::VectorXd>& points,
                                    double eps) {
  if (points.empty()) throw std::invalid_argument("epsilon_net: no points");
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon_net: eps must be positive");
  std::vector<int> net{0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    bool covered = false;
    for (auto it = net.rbegin(); it != net.rend() && !covered; ++it)
      covered = (points[i] - points[static_cast<std::size_t>(*it)]).norm() <= eps;
    if (!covered) net.push_back(static_cast<int>(i));
  }
  return net;
}

struct ProjectedActions {
  Eigen::MatrixXd basis;  // d x d_eff, orthonormal columns spanning the actions
  std::vector<Eigen::VectorXd> projected;
  int effective_dim = 0;
};

// Isometric embedding of the actions into the space they span. Inner
// products between actions are preserved.
inline ProjectedActions project_to_span(const std::vector<Eigen::VectorXd>& actions) {
  if (actions.empty()) throw std::invalid_argument("project_to_span: no actions");
  const Eigen::Index d = actions[0].size();
  Eigen::MatrixXd m(d, static_cast<Eigen::Index>(actions.size()));
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].size() != d)
      throw std::invalid_argument("project_to_span: dimension mismatch");
    m.col(static_cast<Eigen::Index>(i)) = actions[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0))
    throw std::invalid_argument("project_to_span: all actions are zero");
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) >= kRankTol * sv(0)) ++rank;

  ProjectedActions out;
  out.effective_dim = rank;
  out.basis = svd.matrixU().leftCols(rank);
  out.projected.reserve(actions.size());
  for (const auto& a : actions) out.projected.push_back(out.basis.transpose() * a);
  return out;
}

// Audit serialization: {"support":[...],"weights":[...],"counts":[...],"g":...}.
inline std::string to_json(const Design& design, const PullMultiset* multiset = nullptr) {
  std::ostringstream out;
  out << "{\"support\":[";
  for (std::size_t i = 0; i < design.support.size(); ++i)
    out << (i ? "," : "") << design.support[i];
  out << "],\"weights\":[";
  for (std::size_t i = 0; i < design.weights.size(); ++i)
    out << (i ? "," : "") << detail::json_number(design.weights[i]);
  out << "]";
  if (multiset != nullptr) {
    out << ",\"counts\":[";
    for (std::size_t i = 0; i < design.support.size(); ++i)
      out << (i ? "," : "")
          << multiset->counts.at(static_cast<std::size_t>(design.support[i]));
    out << "]";
  }
  out << ",\"g\":" << detail::json_number(design.g_value) << "}";
  return out.str();
}

}  // namespace batchbandits
