#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbandit/arms.hpp"
#include "cbandit/genie.hpp"
#include "cbandit/rng.hpp"
#include "cbandit/runner.hpp"
#include "cbandit/trace.hpp"
#include "cbandit/ucb1.hpp"

namespace cbandit {

// One evaluated bound: the formula's right-hand side, the empirical
// quantity it is compared against, and a one-sided verdict with the stated
// statistical slack already folded in.
struct BoundReport {
  std::string name;
  double bound = 0.0;
  double observed = 0.0;
  double slack = 0.0;  // statistical allowance added to the bound
  bool satisfied = false;
  std::string detail;
};

// Expected-pull ceiling for an arm that is optimal for no context:
// 4 (2+eps) ln n / min_gap^2 + 1 + pi^2 / 3.
inline double theorem1_rhs(double min_gap, double epsilon, double n) {
  return 4.0 * (2.0 + epsilon) * std::log(n) / (min_gap * min_gap) + 1.0 +
         std::numbers::pi * std::numbers::pi / 3.0;
}

// Compares the empirical mean pull count of a non-optimal arm at trial n
// against the theorem1 ceiling, with 3-sigma slack on the replication mean.
inline BoundReport check_theorem1(const GenieTables& genie, const RegretTrace& trace,
                                  double epsilon, std::int64_t n, int arm) {
  if (genie.is_optimal(arm))
    throw std::invalid_argument("check_theorem1: arm is optimal for some context");
  const int cp = trace.checkpoint_index(n);
  if (cp < 0) throw std::invalid_argument("check_theorem1: n is not a trace checkpoint");

  const double min_gap = genie.min_gap(arm);
  BoundReport r;
  r.name = "theorem1[arm=" + std::to_string(arm + 1) + ",n=" + std::to_string(n) + "]";
  r.bound = theorem1_rhs(min_gap, epsilon, static_cast<double>(n));
  r.observed = trace.pulls_at(cp, arm);
  r.slack = 3.0 * trace.pulls_stderr_at(cp, arm);
  r.satisfied = r.observed <= r.bound + r.slack;
  std::ostringstream d;
  d << "min_gap=" << min_gap << " mean_pulls=" << r.observed << " 3se=" << r.slack;
  r.detail = d.str();
  return r;
}

// Non-optimal pulls of each optimal arm must have stopped growing: the mean
// increment over the last decade stays below a small pull budget.
inline std::vector<BoundReport> check_theorem2_flatness(const GenieTables& genie,
                                                        const RegretTrace& trace,
                                                        double threshold = 2.0) {
  const int cp_end = trace.checkpoint_index(trace.horizon);
  const int cp_start = trace.checkpoint_index(trace.horizon / 10);
  if (cp_end < 0 || cp_start < 0)
    throw std::invalid_argument("check_theorem2_flatness: needs checkpoints at T and T/10");

  std::vector<BoundReport> reports;
  for (int arm : genie.optimal_set) {
    BoundReport r;
    r.name = "theorem2[arm=" + std::to_string(arm + 1) + "]";
    r.bound = threshold;
    r.observed = trace.nonopt_at(cp_end, arm) - trace.nonopt_at(cp_start, arm);
    r.satisfied = r.observed <= r.bound;
    std::ostringstream d;
    d << "nonopt(" << trace.horizon << ")=" << trace.nonopt_at(cp_end, arm) << " nonopt("
      << trace.horizon / 10 << ")=" << trace.nonopt_at(cp_start, arm);
    r.detail = d.str();
    reports.push_back(std::move(r));
  }
  return reports;
}

// Least-squares fit of mean cumulative regret against ln n over the last
// decade of checkpoints, plus the same fit on the two half-windows.
struct TailSlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double half1_slope = 0.0;
  double half2_slope = 0.0;
  int points = 0;
};

namespace detail {

inline void least_squares(const std::vector<double>& x, const std::vector<double>& y,
                          double& slope, double& intercept, double& slope_se) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  slope = sxy / sxx;
  intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss_res += r * r;
  }
  slope_se = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
}

}  // namespace detail

inline TailSlopeFit fit_tail_slope(const RegretTrace& trace) {
  const std::int64_t lo = trace.horizon / 10;
  std::vector<double> x, y;
  for (int c = 0; c < trace.num_checkpoints(); ++c) {
    if (trace.checkpoints[static_cast<std::size_t>(c)] >= lo) {
      x.push_back(std::log(static_cast<double>(trace.checkpoints[static_cast<std::size_t>(c)])));
      y.push_back(trace.mean_regret[static_cast<std::size_t>(c)]);
    }
  }
  if (x.size() < 3)
    throw std::invalid_argument("fit_tail_slope: needs at least 3 tail checkpoints");

  TailSlopeFit fit;
  fit.points = static_cast<int>(x.size());
  detail::least_squares(x, y, fit.slope, fit.intercept, fit.slope_stderr);

  const double xmid = 0.5 * (x.front() + x.back());
  std::vector<double> x1, y1, x2, y2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= xmid + 1e-12) {
      x1.push_back(x[i]);
      y1.push_back(y[i]);
    }
    if (x[i] >= xmid - 1e-12) {
      x2.push_back(x[i]);
      y2.push_back(y[i]);
    }
  }
  double unused_i = 0.0, unused_se = 0.0;
  if (x1.size() >= 2) detail::least_squares(x1, y1, fit.half1_slope, unused_i, unused_se);
  if (x2.size() >= 2) detail::least_squares(x2, y2, fit.half2_slope, unused_i, unused_se);
  return fit;
}

// Theorem3 coefficient 4 (2+eps) delta_max |nonoptimal set| / delta_o^2
// against the fitted tail slope of regret vs ln n.
inline BoundReport check_theorem3_slope(const GenieTables& genie, const RegretTrace& trace,
                                        double epsilon) {
  const TailSlopeFit fit = fit_tail_slope(trace);
  BoundReport r;
  r.name = "theorem3[slope]";
  r.bound = 4.0 * (2.0 + epsilon) * genie.delta_max *
            static_cast<double>(genie.non_optimal_set.size()) / (genie.delta_o * genie.delta_o);
  r.observed = fit.slope;
  r.slack = 3.0 * fit.slope_stderr;
  r.satisfied = r.observed <= r.bound + r.slack;
  std::ostringstream d;
  d << "half1=" << fit.half1_slope << " half2=" << fit.half2_slope << " se=" << fit.slope_stderr
    << " points=" << fit.points;
  r.detail = d.str();
  return r;
}

// Smallest n with floor(p_o n / 2K) > ceil(4 (2+eps) ln n / delta_o^2).
inline std::int64_t compute_n_o(double p_o, double delta_o, double epsilon, int num_arms) {
  if (!(p_o > 0.0 && p_o <= 1.0)) throw std::invalid_argument("compute_n_o: p_o in (0,1]");
  if (!(delta_o > 0.0)) throw std::invalid_argument("compute_n_o: delta_o must be > 0");
  if (epsilon < 0.0) throw std::invalid_argument("compute_n_o: epsilon must be >= 0");
  if (num_arms < 1) throw std::invalid_argument("compute_n_o: needs at least one arm");
  const double coeff = 4.0 * (2.0 + epsilon) / (delta_o * delta_o);
  for (std::int64_t n = 1; n <= (std::int64_t{1} << 62); ++n) {
    const double lhs = std::floor(p_o * static_cast<double>(n) / (2.0 * num_arms));
    const double rhs = std::ceil(coeff * std::log(static_cast<double>(n)));
    if (lhs > rhs) return n;
  }
  throw std::runtime_error("compute_n_o: no solution found");
}

// Probability ceiling 2 K^(4+2eps) / n^(2+2eps) for the optimal arm being
// starved below n/K pulls, valid once n clears the qualifying condition
// floor(n/K) > 4 (2+eps) ln n / min_gap^2.
inline double lemma1_bound(int num_arms, double epsilon, double n) {
  return 2.0 * std::pow(static_cast<double>(num_arms), 4.0 + 2.0 * epsilon) /
         std::pow(n, 2.0 + 2.0 * epsilon);
}

inline bool lemma1_qualifies(std::int64_t n, int num_arms, double min_gap, double epsilon) {
  const double lhs = std::floor(static_cast<double>(n) / num_arms);
  const double rhs = 4.0 * (2.0 + epsilon) * std::log(static_cast<double>(n)) / (min_gap * min_gap);
  return lhs > rhs;
}

// Runs the plain index policy on a standard bandit with Bernoulli arms and
// measures how often the optimal arm ends up with fewer than n/K pulls.
// Every grid point must satisfy the qualifying condition.
inline std::vector<BoundReport> check_lemma1(int num_arms, const std::vector<double>& means,
                                             double epsilon, std::vector<std::int64_t> n_grid,
                                             int replications, std::uint64_t seed = 0,
                                             int threads = 0) {
  if (num_arms < 2) throw std::invalid_argument("check_lemma1: needs at least two arms");
  if (static_cast<int>(means.size()) != num_arms)
    throw std::invalid_argument("check_lemma1: one mean per arm required");
  for (double m : means) {
    if (m < 0.0 || m > 1.0)
      throw std::invalid_argument("check_lemma1: means must lie in [0,1]");
  }
  if (epsilon < 0.0) throw std::invalid_argument("check_lemma1: epsilon must be >= 0");
  if (replications < 1) throw std::invalid_argument("check_lemma1: replications >= 1");
  if (n_grid.empty()) throw std::invalid_argument("check_lemma1: empty grid");
  std::sort(n_grid.begin(), n_grid.end());
  n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());

  int star = 0;
  for (int j = 1; j < num_arms; ++j) {
    if (means[static_cast<std::size_t>(j)] > means[static_cast<std::size_t>(star)]) star = j;
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < num_arms; ++j) {
    if (j != star)
      min_gap = std::min(min_gap, means[static_cast<std::size_t>(star)] -
                                      means[static_cast<std::size_t>(j)]);
  }
  if (!(min_gap > 0.0)) throw std::invalid_argument("check_lemma1: optimal arm is not unique");

  for (std::int64_t n : n_grid) {
    if (!lemma1_qualifies(n, num_arms, min_gap, epsilon))
      throw std::invalid_argument("check_lemma1: grid point n=" + std::to_string(n) +
                                  " violates the qualifying condition");
  }

  const std::int64_t n_max = n_grid.back();
  std::vector<std::int64_t> event_counts(n_grid.size(), 0);
  const int workers =
      threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  const int chunks = std::max(1, std::min(workers, replications));
  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(chunks), std::vector<std::int64_t>(n_grid.size(), 0));

  parallel_for(chunks, chunks, [&](int chunk) {
    auto& local = partial[static_cast<std::size_t>(chunk)];
    for (int rep = chunk; rep < replications; rep += chunks) {
      Rng rng = make_stream_rng(seed, static_cast<std::uint64_t>(rep));
      Ucb1Policy policy(num_arms, epsilon);
      std::int64_t star_pulls = 0;
      std::size_t gi = 0;
      for (std::int64_t t = 1; t <= n_max; ++t) {
        const int arm = policy.select();
        const double reward =
            next_unit(rng) < means[static_cast<std::size_t>(arm)] ? 1.0 : 0.0;
        policy.update(arm, reward);
        if (arm == star) ++star_pulls;
        while (gi < n_grid.size() && t == n_grid[gi]) {
          if (star_pulls * num_arms < t) ++local[gi];  // T*(n) < n/K
          ++gi;
        }
      }
    }
  });
  for (const auto& local : partial) {
    for (std::size_t i = 0; i < event_counts.size(); ++i) event_counts[i] += local[i];
  }

  std::vector<BoundReport> reports;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    BoundReport r;
    r.name = "lemma1[n=" + std::to_string(n_grid[i]) + "]";
    r.bound = lemma1_bound(num_arms, epsilon, static_cast<double>(n_grid[i]));
    const double freq =
        static_cast<double>(event_counts[i]) / static_cast<double>(replications);
    r.observed = freq;
    r.slack = 3.0 * std::sqrt(freq * (1.0 - freq) / static_cast<double>(replications));
    r.satisfied = r.observed <= r.bound + r.slack;
    std::ostringstream d;
    d << "events=" << event_counts[i] << "/" << replications;
    r.detail = d.str();
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace cbandit
