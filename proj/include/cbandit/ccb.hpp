#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cbandit/dcb.hpp"
#include "cbandit/environment.hpp"

namespace cbandit {

// Uniform partition of [lo, hi] into bins of width delta. When delta does
// not divide the width, the trailing bin is narrower and its center is the
// midpoint of the truncated bin, so the bins always tile the support
// exactly. Values on the right edge map into the last bin.
class ContextQuantizer {
 public:
  ContextQuantizer(double lo, double hi, double delta) : lo_(lo), hi_(hi), delta_(delta) {
    if (!(lo < hi)) throw std::invalid_argument("ContextQuantizer: requires lo < hi");
    const double width = hi - lo;
    if (!(delta > 0.0) || delta > width * (1.0 + 1e-12))
      throw std::invalid_argument("ContextQuantizer: delta must lie in (0, hi - lo]");
    // The 1e-9 slack keeps e.g. pow(T, -1/3) from spilling into a spurious
    // extra bin when 1/delta is an integer up to rounding.
    num_bins_ = static_cast<int>(std::ceil(width / delta - 1e-9));
    if (num_bins_ < 1) num_bins_ = 1;
    centers_.resize(static_cast<std::size_t>(num_bins_));
    for (int b = 0; b + 1 < num_bins_; ++b)
      centers_[static_cast<std::size_t>(b)] = lo + (static_cast<double>(b) + 0.5) * delta;
    centers_[static_cast<std::size_t>(num_bins_) - 1] =
        0.5 * (lo + static_cast<double>(num_bins_ - 1) * delta + hi);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double delta() const { return delta_; }
  int num_bins() const { return num_bins_; }
  const std::vector<double>& centers() const { return centers_; }

  int bin(double y) const {
    if (!(y >= lo_ && y <= hi_))
      throw std::out_of_range("ContextQuantizer: context outside support");
    const int b = static_cast<int>((y - lo_) / delta_);
    return b < num_bins_ ? b : num_bins_ - 1;
  }

  double center(int b) const { return centers_.at(static_cast<std::size_t>(b)); }

  double quantize(double y) const { return centers_[static_cast<std::size_t>(bin(y))]; }

 private:
  double lo_;
  double hi_;
  double delta_;
  int num_bins_ = 0;
  std::vector<double> centers_;
};

// delta tuned so that delta * T grows like T^alpha.
inline double tuned_delta(double horizon, double alpha) {
  return std::pow(horizon, alpha - 1.0);
}

// Continuous-context policy: quantize the incoming context and delegate to
// a DcbPolicy whose context set is the bin centers, with the reward
// function and ranges evaluated at those centers.
class CcbPolicy {
 public:
  CcbPolicy(const std::vector<ArmSpec>& arms, const RewardFunction& reward, double lo, double hi,
            double epsilon, double delta)
      : quantizer_(lo, hi, delta),
        table_(std::make_unique<RewardTable>(quantizer_.centers(), arms, reward)),
        dcb_(*table_, epsilon) {}

  double epsilon() const { return dcb_.epsilon(); }
  double delta() const { return quantizer_.delta(); }
  const ContextQuantizer& quantizer() const { return quantizer_; }
  const DcbPolicy& inner() const { return dcb_; }
  std::int64_t trial() const { return dcb_.trial(); }
  int num_arms() const { return dcb_.num_arms(); }

  int select(double y) const { return dcb_.select(quantizer_.bin(y)); }

  void update(double y, int arm, int value_index) {
    quantizer_.bin(y);  // range check; the inner update refreshes every bin
    dcb_.update(arm, value_index);
  }

 private:
  ContextQuantizer quantizer_;
  std::unique_ptr<RewardTable> table_;  // stable address: dcb_ points into it
  DcbPolicy dcb_;
};

}  // namespace cbandit
