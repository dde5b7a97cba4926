#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cbandit/environment.hpp"

namespace cbandit {

// Classical index policy on raw arm values, ignoring contexts. epsilon
// widens the confidence exponent: the bonus is sqrt((2 + eps) ln n / m_k),
// which for eps = 0 is the standard index. Each arm is pulled once, in
// order, before indices are compared.
class Ucb1Policy {
 public:
  explicit Ucb1Policy(int num_arms, double epsilon = 0.0)
      : num_arms_(num_arms),
        epsilon_(epsilon),
        means_(static_cast<std::size_t>(num_arms > 0 ? num_arms : 0), 0.0),
        pulls_(static_cast<std::size_t>(num_arms > 0 ? num_arms : 0), 0) {
    if (num_arms < 1) throw std::invalid_argument("Ucb1Policy: needs at least one arm");
    if (epsilon < 0.0) throw std::invalid_argument("Ucb1Policy: epsilon must be >= 0");
  }

  int num_arms() const { return num_arms_; }
  double epsilon() const { return epsilon_; }
  std::int64_t trial() const { return trial_; }
  std::int64_t pull_count(int arm) const { return pulls_[check_arm(arm)]; }
  double value_mean(int arm) const { return means_[check_arm(arm)]; }

  int select() const {
    if (trial_ < num_arms_) return static_cast<int>(trial_);
    const double conf = (2.0 + epsilon_) * std::log(static_cast<double>(trial_ + 1));
    int best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < num_arms_; ++j) {
      const double idx =
          means_[static_cast<std::size_t>(j)] +
          std::sqrt(conf / static_cast<double>(pulls_[static_cast<std::size_t>(j)]));
      if (idx > best_index) {
        best_index = idx;
        best = j;
      }
    }
    return best;
  }

  void update(int arm, double value) {
    const std::size_t j = check_arm(arm);
    const double m = static_cast<double>(pulls_[j]);
    means_[j] = (means_[j] * m + value) * (1.0 / (m + 1.0));
    ++pulls_[j];
    ++trial_;
  }

 private:
  std::size_t check_arm(int arm) const {
    if (arm < 0 || arm >= num_arms_) throw std::out_of_range("Ucb1Policy: arm index");
    return static_cast<std::size_t>(arm);
  }

  int num_arms_;
  double epsilon_;
  std::vector<double> means_;
  std::vector<std::int64_t> pulls_;
  std::int64_t trial_ = 0;
};

}  // namespace cbandit
