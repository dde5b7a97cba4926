#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cbandit {

// Number of successfully transmitted bits when y bits meet a channel of
// capacity x.
inline double reward_min(double y, double x) { return y < x ? y : x; }

// Achievable rate for transmit power p over a channel with gain-to-noise
// ratio x (natural log).
inline double reward_log(double p, double x) { return std::log1p(p * x); }

enum class RewardKind { MinCapacity, LogPower, Table, Custom };

// Known mapping from (context, arm state) to payoff, with its declared
// bound B and Lipschitz constant L in the context argument.
class RewardFunction {
 public:
  RewardFunction() = default;  // min-capacity with unspecified bound

  static RewardFunction min_capacity(double bound = 0.0, double lipschitz = 1.0) {
    RewardFunction r;
    r.kind_ = RewardKind::MinCapacity;
    r.bound_ = bound;
    r.lipschitz_ = lipschitz;
    return r;
  }

  static RewardFunction log_power(double bound = 0.0, double lipschitz = 0.0) {
    RewardFunction r;
    r.kind_ = RewardKind::LogPower;
    r.bound_ = bound;
    r.lipschitz_ = lipschitz;
    return r;
  }

  // Tabulated rewards: g(ys[i], xs[v]) = cells[i][v]. Lookup is by exact
  // match (within 1e-12), so the declared grids must cover every context
  // value and arm support point the environment can produce.
  static RewardFunction table(std::vector<double> ys, std::vector<double> xs,
                              std::vector<std::vector<double>> cells,
                              double bound = 0.0, double lipschitz = 0.0) {
    if (cells.size() != ys.size())
      throw std::invalid_argument("RewardFunction::table: one row per context value required");
    for (const auto& row : cells) {
      if (row.size() != xs.size())
        throw std::invalid_argument("RewardFunction::table: one cell per arm value required");
    }
    RewardFunction r;
    r.kind_ = RewardKind::Table;
    r.bound_ = bound;
    r.lipschitz_ = lipschitz;
    r.fn_ = [ys = std::move(ys), xs = std::move(xs), cells = std::move(cells)](double y, double x) {
      return cells[lookup(ys, y, "context")][lookup(xs, x, "arm value")];
    };
    return r;
  }

  static RewardFunction custom(std::function<double(double, double)> fn, double bound = 0.0,
                               double lipschitz = 0.0) {
    if (!fn) throw std::invalid_argument("RewardFunction::custom: empty function");
    RewardFunction r;
    r.kind_ = RewardKind::Custom;
    r.bound_ = bound;
    r.lipschitz_ = lipschitz;
    r.fn_ = std::move(fn);
    return r;
  }

  double operator()(double y, double x) const {
    switch (kind_) {
      case RewardKind::MinCapacity:
        return reward_min(y, x);
      case RewardKind::LogPower:
        return reward_log(y, x);
      default:
        return fn_(y, x);
    }
  }

  RewardKind kind() const { return kind_; }
  double bound() const { return bound_; }
  double lipschitz() const { return lipschitz_; }

 private:
  static std::size_t lookup(const std::vector<double>& grid, double v, const char* what) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(grid[i] - v) <= 1e-12) return i;
    }
    throw std::out_of_range(std::string("RewardFunction::table: ") + what + " not in declared grid");
  }

  RewardKind kind_ = RewardKind::MinCapacity;
  double bound_ = 0.0;
  double lipschitz_ = 0.0;
  std::function<double(double, double)> fn_;
};

}  // namespace cbandit
