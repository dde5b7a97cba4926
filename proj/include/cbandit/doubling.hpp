#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cbandit/ccb.hpp"

namespace cbandit {

// Horizon-free wrapper: phase m = 1, 2, ... runs exactly 2^m trials on a
// freshly initialized CcbPolicy tuned for that phase length, with
// delta_m = (2^m)^(alpha - 1). Nothing carries over between phases.
class DoublingCcbPolicy {
 public:
  DoublingCcbPolicy(std::vector<ArmSpec> arms, RewardFunction reward, double lo, double hi,
                    double epsilon, double alpha)
      : arms_(std::move(arms)),
        reward_(std::move(reward)),
        lo_(lo),
        hi_(hi),
        epsilon_(epsilon),
        alpha_(alpha) {
    if (alpha < 0.0 || alpha > 1.0)
      throw std::invalid_argument("DoublingCcbPolicy: alpha must lie in [0,1]");
    start_phase(1);
  }

  int phase() const { return phase_; }
  std::int64_t phase_length() const { return phase_length_; }
  std::int64_t trials_in_phase() const { return trials_in_phase_; }
  double alpha() const { return alpha_; }
  const CcbPolicy& inner() const { return *ccb_; }

  int select(double y) const { return ccb_->select(y); }

  void update(double y, int arm, int value_index) {
    ccb_->update(y, arm, value_index);
    if (++trials_in_phase_ == phase_length_) start_phase(phase_ + 1);
  }

 private:
  void start_phase(int m) {
    phase_ = m;
    phase_length_ = std::int64_t{1} << m;
    trials_in_phase_ = 0;
    const double width = hi_ - lo_;
    const double delta =
        std::min(std::exp2(static_cast<double>(m) * (alpha_ - 1.0)), width);
    ccb_ = std::make_unique<CcbPolicy>(arms_, reward_, lo_, hi_, epsilon_, delta);
  }

  std::vector<ArmSpec> arms_;
  RewardFunction reward_;
  double lo_;
  double hi_;
  double epsilon_;
  double alpha_;
  int phase_ = 0;
  std::int64_t phase_length_ = 0;
  std::int64_t trials_in_phase_ = 0;
  std::unique_ptr<CcbPolicy> ccb_;
};

}  // namespace cbandit
