#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbandit/arms.hpp"
#include "cbandit/genie.hpp"
#include "cbandit/reward.hpp"
#include "cbandit/rng.hpp"

namespace cbandit {

// Rewards g(y_i, x) tabulated for every context value and every support
// point of every arm, stored one contiguous column per (arm, support point)
// so that a single pull can update all contexts in one pass. Also carries
// the per-context reward ranges G_i.
class RewardTable {
 public:
  RewardTable() = default;

  RewardTable(std::vector<double> context_values, const std::vector<ArmSpec>& arms,
              const RewardFunction& reward)
      : contexts_(std::move(context_values)) {
    M_ = static_cast<int>(contexts_.size());
    K_ = static_cast<int>(arms.size());
    if (M_ == 0) throw std::invalid_argument("RewardTable: empty context set");
    if (K_ == 0) throw std::invalid_argument("RewardTable: empty arm set");

    col_offset_.resize(static_cast<std::size_t>(K_) + 1, 0);
    for (int j = 0; j < K_; ++j)
      col_offset_[static_cast<std::size_t>(j) + 1] =
          col_offset_[static_cast<std::size_t>(j)] + arms[static_cast<std::size_t>(j)].num_values();

    const std::size_t total_cols = static_cast<std::size_t>(col_offset_.back());
    columns_.resize(total_cols * static_cast<std::size_t>(M_));
    zero_col_.assign(total_cols, 1);
    for (int j = 0; j < K_; ++j) {
      const auto& arm = arms[static_cast<std::size_t>(j)];
      for (int v = 0; v < arm.num_values(); ++v) {
        double* col = column_ptr(j, v);
        for (int i = 0; i < M_; ++i) {
          col[i] = reward(contexts_[static_cast<std::size_t>(i)],
                          arm.values[static_cast<std::size_t>(v)]);
          if (col[i] != 0.0) zero_col_[col_id(j, v)] = 0;
        }
      }
    }
    ranges_ = context_reward_ranges(contexts_, arms, reward);
  }

  int num_contexts() const { return M_; }
  int num_arms() const { return K_; }

  std::span<const double> column(int arm, int value_index) const {
    return {columns_.data() + col_id(arm, value_index) * static_cast<std::size_t>(M_),
            static_cast<std::size_t>(M_)};
  }

  bool column_is_zero(int arm, int value_index) const { return zero_col_[col_id(arm, value_index)] != 0; }

  double reward(int context, int arm, int value_index) const {
    return column(arm, value_index)[static_cast<std::size_t>(context)];
  }

  double range(int context) const { return ranges_[static_cast<std::size_t>(context)]; }
  const std::vector<double>& ranges() const { return ranges_; }
  const std::vector<double>& context_values() const { return contexts_; }

 private:
  std::size_t col_id(int arm, int value_index) const {
    if (arm < 0 || arm >= K_) throw std::out_of_range("RewardTable: arm index");
    const int base = col_offset_[static_cast<std::size_t>(arm)];
    const int end = col_offset_[static_cast<std::size_t>(arm) + 1];
    if (value_index < 0 || base + value_index >= end)
      throw std::out_of_range("RewardTable: value index");
    return static_cast<std::size_t>(base + value_index);
  }

  double* column_ptr(int arm, int value_index) {
    return columns_.data() + col_id(arm, value_index) * static_cast<std::size_t>(M_);
  }

  int M_ = 0;
  int K_ = 0;
  std::vector<double> contexts_;
  std::vector<int> col_offset_;
  std::vector<double> columns_;
  std::vector<char> zero_col_;
  std::vector<double> ranges_;
};

namespace detail {

inline std::vector<std::vector<double>> arm_cdfs(const std::vector<ArmSpec>& arms) {
  std::vector<std::vector<double>> cdfs(arms.size());
  for (std::size_t j = 0; j < arms.size(); ++j) {
    double acc = 0.0;
    cdfs[j].reserve(arms[j].probs.size());
    for (double p : arms[j].probs) {
      acc += p;
      cdfs[j].push_back(acc);
    }
    cdfs[j].back() = 1.0;
  }
  return cdfs;
}

}  // namespace detail

// Discrete-context problem instance: context distribution, per-arm value
// distributions, reward function, and the derived exact tables. Immutable
// after construction; safe to share across replications.
class DiscreteEnvironment {
 public:
  using Context = int;

  DiscreteEnvironment(DiscreteContexts contexts, std::vector<ArmSpec> arms, RewardFunction reward)
      : contexts_(std::move(contexts)), arms_(std::move(arms)), reward_(std::move(reward)) {
    contexts_.validate();
    if (arms_.empty()) throw std::invalid_argument("environment: empty arm set");
    for (std::size_t j = 0; j < arms_.size(); ++j)
      arms_[j].validate("arm " + std::to_string(j + 1));
    table_ = RewardTable(contexts_.values, arms_, reward_);
    genie_ = compute_genie(contexts_, arms_, reward_);
    ctx_cdf_.reserve(contexts_.probs.size());
    double acc = 0.0;
    for (double p : contexts_.probs) {
      acc += p;
      ctx_cdf_.push_back(acc);
    }
    ctx_cdf_.back() = 1.0;
    value_cdfs_ = detail::arm_cdfs(arms_);
  }

  int num_arms() const { return static_cast<int>(arms_.size()); }
  int num_contexts() const { return contexts_.num_contexts(); }

  const DiscreteContexts& contexts() const { return contexts_; }
  const std::vector<ArmSpec>& arms() const { return arms_; }
  const RewardFunction& reward_fn() const { return reward_; }
  const RewardTable& table() const { return table_; }
  const GenieTables& genie() const { return genie_; }

  int sample_context(Rng& rng) const { return sample_cdf(rng, ctx_cdf_); }

  // Draws one value index per arm, independently; every arm is sampled every
  // round so the stream is identical no matter which arm a policy pulls.
  void sample_values(Rng& rng, std::span<int> out) const {
    for (std::size_t j = 0; j < value_cdfs_.size(); ++j)
      out[j] = sample_cdf(rng, value_cdfs_[j]);
  }

  double value_of(int arm, int value_index) const {
    return arms_[static_cast<std::size_t>(arm)].values[static_cast<std::size_t>(value_index)];
  }

 private:
  DiscreteContexts contexts_;
  std::vector<ArmSpec> arms_;
  RewardFunction reward_;
  RewardTable table_;
  GenieTables genie_;
  std::vector<double> ctx_cdf_;
  std::vector<std::vector<double>> value_cdfs_;
};

// Continuous-context problem instance with uniform context draws. The genie
// is evaluated on demand, exactly, at arbitrary context values.
class ContinuousEnvironment {
 public:
  using Context = double;

  ContinuousEnvironment(ContinuousContexts contexts, std::vector<ArmSpec> arms,
                        RewardFunction reward)
      : contexts_(contexts), arms_(std::move(arms)), reward_(std::move(reward)) {
    contexts_.validate();
    if (arms_.empty()) throw std::invalid_argument("environment: empty arm set");
    for (std::size_t j = 0; j < arms_.size(); ++j)
      arms_[j].validate("arm " + std::to_string(j + 1));
    value_cdfs_ = detail::arm_cdfs(arms_);
  }

  int num_arms() const { return static_cast<int>(arms_.size()); }

  const ContinuousContexts& contexts() const { return contexts_; }
  const std::vector<ArmSpec>& arms() const { return arms_; }
  const RewardFunction& reward_fn() const { return reward_; }

  double sample_context(Rng& rng) const { return next_uniform(rng, contexts_.lo, contexts_.hi); }

  void sample_values(Rng& rng, std::span<int> out) const {
    for (std::size_t j = 0; j < value_cdfs_.size(); ++j)
      out[j] = sample_cdf(rng, value_cdfs_[j]);
  }

  double value_of(int arm, int value_index) const {
    return arms_[static_cast<std::size_t>(arm)].values[static_cast<std::size_t>(value_index)];
  }

  // out[j] = E[g(y, X_j)]; returns the best arm at y.
  int theta_all(double y, std::span<double> out) const {
    return expected_rewards_all(y, arms_, reward_, out);
  }

  double theta(double y, int arm) const {
    return expected_reward(y, arms_[static_cast<std::size_t>(arm)], reward_);
  }

  ContinuousGenieDecision best_arm(double y) const {
    return genie_arm_continuous(y, arms_, reward_);
  }

 private:
  ContinuousContexts contexts_;
  std::vector<ArmSpec> arms_;
  RewardFunction reward_;
  std::vector<std::vector<double>> value_cdfs_;
};

}  // namespace cbandit
