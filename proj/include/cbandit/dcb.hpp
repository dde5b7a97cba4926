#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cbandit/environment.hpp"

namespace cbandit {

// Index policy for discrete contexts with a known reward function. A single
// pull reveals the chosen arm's state, so the estimate column for that arm
// is refreshed for every context at once; pull counts are shared across
// contexts. The per-context index scales the confidence bonus by the
// context's reward range:
//
//   index(i, j) = theta_hat[i][j] + G_i * sqrt((2 + eps) ln n / m_j)
//
// Requires eps > 0. The first K selections return each arm once, in order,
// regardless of context.
class DcbPolicy {
 public:
  DcbPolicy(const RewardTable& table, double epsilon)
      : table_(&table),
        num_contexts_(table.num_contexts()),
        num_arms_(table.num_arms()),
        epsilon_(epsilon),
        theta_(static_cast<std::size_t>(num_contexts_) * static_cast<std::size_t>(num_arms_), 0.0),
        pulls_(static_cast<std::size_t>(num_arms_), 0) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("DcbPolicy: epsilon must be > 0");
  }

  int num_arms() const { return num_arms_; }
  int num_contexts() const { return num_contexts_; }
  double epsilon() const { return epsilon_; }
  std::int64_t trial() const { return trial_; }
  std::int64_t pull_count(int arm) const { return pulls_[check_arm(arm)]; }
  bool initialized() const { return trial_ >= num_arms_; }

  double theta_hat(int context, int arm) const {
    return theta_[check_arm(arm) * static_cast<std::size_t>(num_contexts_) +
                  check_context(context)];
  }

  double index(int context, int arm) const {
    check_context(context);
    check_arm(arm);
    if (pulls_[static_cast<std::size_t>(arm)] == 0)
      return std::numeric_limits<double>::infinity();
    const double conf = (2.0 + epsilon_) * std::log(static_cast<double>(trial_ + 1));
    return theta_hat(context, arm) +
           table_->range(context) *
               std::sqrt(conf / static_cast<double>(pulls_[static_cast<std::size_t>(arm)]));
  }

  int select(int context) const {
    check_context(context);
    if (trial_ < num_arms_) return static_cast<int>(trial_);  // forced initialization round

    const double conf = (2.0 + epsilon_) * std::log(static_cast<double>(trial_ + 1));
    const double range = table_->range(context);
    const double* row = theta_.data() + static_cast<std::size_t>(context);
    int best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < num_arms_; ++j) {
      const double idx =
          row[static_cast<std::size_t>(j) * static_cast<std::size_t>(num_contexts_)] +
          range * std::sqrt(conf / static_cast<double>(pulls_[static_cast<std::size_t>(j)]));
      if (idx > best_index) {
        best_index = idx;
        best = j;
      }
    }
    return best;
  }

  void update(int arm, int value_index) {
    const std::size_t j = check_arm(arm);
    const double m = static_cast<double>(pulls_[j]);
    const double inv = 1.0 / (m + 1.0);
    double* col = theta_.data() + j * static_cast<std::size_t>(num_contexts_);
    if (table_->column_is_zero(arm, value_index)) {
      for (int i = 0; i < num_contexts_; ++i) col[i] = (col[i] * m) * inv;
    } else {
      const std::span<const double> g = table_->column(arm, value_index);
      for (int i = 0; i < num_contexts_; ++i) col[i] = (col[i] * m + g[i]) * inv;
    }
    ++pulls_[j];
    ++trial_;
  }

 private:
  std::size_t check_context(int context) const {
    if (context < 0 || context >= num_contexts_)
      throw std::out_of_range("DcbPolicy: context index");
    return static_cast<std::size_t>(context);
  }
  std::size_t check_arm(int arm) const {
    if (arm < 0 || arm >= num_arms_) throw std::out_of_range("DcbPolicy: arm index");
    return static_cast<std::size_t>(arm);
  }

  const RewardTable* table_;
  int num_contexts_;
  int num_arms_;
  double epsilon_;
  std::vector<double> theta_;  // column-major: theta_[j*M + i]
  std::vector<std::int64_t> pulls_;
  std::int64_t trial_ = 0;
};

}  // namespace cbandit
