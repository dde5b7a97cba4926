#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cbandit {

// One independent index-policy instance per context: row i keeps its own
// reward means, pull counts and occurrence count, and an update touches
// only that row. The index for context i is
//
//   mean[i][k] + sqrt(2 ln n_i / m_{i,k})
//
// optionally scaled by a per-context bonus factor (off by default). The
// first K occurrences of a context cycle through the arms in order.
class MultiUcbPolicy {
 public:
  MultiUcbPolicy(int num_contexts, int num_arms, std::vector<double> bonus_scales = {})
      : num_contexts_(num_contexts), num_arms_(num_arms), scales_(std::move(bonus_scales)) {
    if (num_contexts < 1) throw std::invalid_argument("MultiUcbPolicy: needs a context");
    if (num_arms < 1) throw std::invalid_argument("MultiUcbPolicy: needs at least one arm");
    if (!scales_.empty() && static_cast<int>(scales_.size()) != num_contexts)
      throw std::invalid_argument("MultiUcbPolicy: one bonus scale per context required");
    const std::size_t cells =
        static_cast<std::size_t>(num_contexts) * static_cast<std::size_t>(num_arms);
    means_.assign(cells, 0.0);
    pulls_.assign(cells, 0);
    counts_.assign(static_cast<std::size_t>(num_contexts), 0);
  }

  int num_contexts() const { return num_contexts_; }
  int num_arms() const { return num_arms_; }
  std::int64_t trial() const { return trial_; }
  std::int64_t context_count(int context) const { return counts_[check_context(context)]; }
  std::int64_t pull_count(int context, int arm) const { return pulls_[cell(context, arm)]; }
  double reward_mean(int context, int arm) const { return means_[cell(context, arm)]; }

  int select(int context) const {
    const std::size_t i = check_context(context);
    if (counts_[i] < num_arms_) return static_cast<int>(counts_[i]);  // per-context init round

    const double conf = 2.0 * std::log(static_cast<double>(counts_[i] + 1));
    const double scale = scales_.empty() ? 1.0 : scales_[i];
    const double* means = means_.data() + i * static_cast<std::size_t>(num_arms_);
    const std::int64_t* pulls = pulls_.data() + i * static_cast<std::size_t>(num_arms_);
    int best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < num_arms_; ++k) {
      const double idx =
          means[k] + scale * std::sqrt(conf / static_cast<double>(pulls[k]));
      if (idx > best_index) {
        best_index = idx;
        best = k;
      }
    }
    return best;
  }

  void update(int context, int arm, double reward) {
    const std::size_t c = cell(context, arm);
    const double m = static_cast<double>(pulls_[c]);
    means_[c] = (means_[c] * m + reward) * (1.0 / (m + 1.0));
    ++pulls_[c];
    ++counts_[check_context(context)];
    ++trial_;
  }

 private:
  std::size_t check_context(int context) const {
    if (context < 0 || context >= num_contexts_)
      throw std::out_of_range("MultiUcbPolicy: context index");
    return static_cast<std::size_t>(context);
  }
  std::size_t cell(int context, int arm) const {
    if (arm < 0 || arm >= num_arms_) throw std::out_of_range("MultiUcbPolicy: arm index");
    return check_context(context) * static_cast<std::size_t>(num_arms_) +
           static_cast<std::size_t>(arm);
  }

  int num_contexts_;
  int num_arms_;
  std::vector<double> scales_;
  std::vector<double> means_;        // M x K, row per context
  std::vector<std::int64_t> pulls_;  // M x K
  std::vector<std::int64_t> counts_;
  std::int64_t trial_ = 0;
};

}  // namespace cbandit
