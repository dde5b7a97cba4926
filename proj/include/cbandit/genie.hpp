#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbandit/arms.hpp"
#include "cbandit/reward.hpp"

namespace cbandit {

// Exact E[g(y, X)] for one arm, by finite summation over its support.
inline double expected_reward(double y, const ArmSpec& arm, const RewardFunction& g) {
  double s = 0.0;
  for (std::size_t v = 0; v < arm.values.size(); ++v) s += arm.probs[v] * g(y, arm.values[v]);
  return s;
}

// Fills out[j] = E[g(y, X_j)] and returns the argmax (lowest index on ties).
inline int expected_rewards_all(double y, const std::vector<ArmSpec>& arms,
                                const RewardFunction& g, std::span<double> out) {
  int best = 0;
  for (std::size_t j = 0; j < arms.size(); ++j) {
    out[j] = expected_reward(y, arms[j], g);
    if (out[j] > out[best]) best = static_cast<int>(j);
  }
  return best;
}

struct ContinuousGenieDecision {
  int arm = 0;
  double expected_reward = 0.0;
};

// Best arm and its exact expected reward at a single context value.
inline ContinuousGenieDecision genie_arm_continuous(double y, const std::vector<ArmSpec>& arms,
                                                    const RewardFunction& g) {
  if (arms.empty()) throw std::invalid_argument("genie_arm_continuous: no arms");
  ContinuousGenieDecision d{0, expected_reward(y, arms[0], g)};
  for (std::size_t j = 1; j < arms.size(); ++j) {
    const double r = expected_reward(y, arms[j], g);
    if (r > d.expected_reward) d = {static_cast<int>(j), r};
  }
  return d;
}

// Reward range sup g - inf g per context, taken over the union of the arm
// supports.
inline std::vector<double> context_reward_ranges(const std::vector<double>& context_values,
                                                 const std::vector<ArmSpec>& arms,
                                                 const RewardFunction& g) {
  std::vector<double> support;
  for (const auto& a : arms) support.insert(support.end(), a.values.begin(), a.values.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  std::vector<double> ranges(context_values.size());
  for (std::size_t i = 0; i < context_values.size(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : support) {
      const double r = g(context_values[i], x);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    ranges[i] = hi - lo;
  }
  return ranges;
}

// Everything a distribution-aware oracle knows about a discrete problem:
// the exact expected-reward matrix, the optimal hypothesis, the gap matrix
// and the scalars the regret bounds are evaluated from.
struct GenieTables {
  int num_contexts = 0;
  int num_arms = 0;
  std::vector<double> theta;       // M x K, row-major
  std::vector<double> gaps;        // M x K, theta_i* - theta_{i,j}
  std::vector<int> h_star;         // per context, lowest index on ties
  std::vector<char> optimal_mask;  // per arm
  std::vector<int> optimal_set;
  std::vector<int> non_optimal_set;
  std::vector<double> q;           // per arm: context mass for which it is optimal
  std::vector<double> ranges;      // per context: G_i
  double delta_o = std::numeric_limits<double>::infinity();
  double delta_max = 0.0;
  double p_o = 0.0;

  double theta_at(int context, int arm) const { return theta[idx(context, arm)]; }
  double gap(int context, int arm) const { return gaps[idx(context, arm)]; }

  bool is_optimal(int arm) const { return optimal_mask[static_cast<std::size_t>(arm)] != 0; }

  // Smallest gap of an arm across contexts where it is not the optimum.
  double min_gap(int arm) const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_contexts; ++i) {
      if (h_star[static_cast<std::size_t>(i)] != arm) m = std::min(m, gap(i, arm));
    }
    return m;
  }

 private:
  std::size_t idx(int context, int arm) const {
    if (context < 0 || context >= num_contexts) throw std::out_of_range("genie: context index");
    if (arm < 0 || arm >= num_arms) throw std::out_of_range("genie: arm index");
    return static_cast<std::size_t>(context) * static_cast<std::size_t>(num_arms) +
           static_cast<std::size_t>(arm);
  }
};

inline GenieTables compute_genie(const DiscreteContexts& contexts,
                                 const std::vector<ArmSpec>& arms, const RewardFunction& g) {
  contexts.validate();
  if (arms.empty()) throw std::invalid_argument("compute_genie: no arms");
  for (std::size_t j = 0; j < arms.size(); ++j)
    arms[j].validate("arm " + std::to_string(j + 1));

  GenieTables t;
  t.num_contexts = contexts.num_contexts();
  t.num_arms = static_cast<int>(arms.size());
  const std::size_t M = static_cast<std::size_t>(t.num_contexts);
  const std::size_t K = static_cast<std::size_t>(t.num_arms);
  t.theta.resize(M * K);
  t.gaps.resize(M * K);
  t.h_star.resize(M);
  t.optimal_mask.assign(K, 0);
  t.q.assign(K, 0.0);
  t.ranges = context_reward_ranges(contexts.values, arms, g);

  for (std::size_t i = 0; i < M; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < K; ++j) {
      t.theta[i * K + j] = expected_reward(contexts.values[i], arms[j], g);
      if (t.theta[i * K + j] > t.theta[i * K + best]) best = j;
    }
    t.h_star[i] = static_cast<int>(best);
    t.optimal_mask[best] = 1;
    t.q[best] += contexts.probs[i];
    for (std::size_t j = 0; j < K; ++j) {
      const double gap = t.theta[i * K + best] - t.theta[i * K + j];
      t.gaps[i * K + j] = gap;
      t.delta_max = std::max(t.delta_max, gap);
      if (j != best) t.delta_o = std::min(t.delta_o, gap);
    }
  }

  for (std::size_t j = 0; j < K; ++j) {
    if (t.optimal_mask[j]) t.optimal_set.push_back(static_cast<int>(j));
    else t.non_optimal_set.push_back(static_cast<int>(j));
  }
  t.p_o = *std::min_element(contexts.probs.begin(), contexts.probs.end());
  return t;
}

}  // namespace cbandit
