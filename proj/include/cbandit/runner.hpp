#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "cbandit/environment.hpp"
#include "cbandit/rng.hpp"
#include "cbandit/trace.hpp"

namespace cbandit {

struct RunOptions {
  std::int64_t horizon = 0;
  int replications = 1;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;        // empty: default log grid
  int threads = 0;                              // 0: hardware concurrency
  std::vector<std::uint64_t> replication_seeds; // overrides counter derivation
};

template <class F>
void parallel_for(int n, int threads, F&& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace detail {

// Per-round pseudo-regret and whether the pull was non-optimal for the
// observed context.
inline std::pair<double, bool> round_regret(const DiscreteEnvironment& env, int context, int arm,
                                            std::span<double>) {
  const GenieTables& g = env.genie();
  return {g.gap(context, arm), arm != g.h_star[static_cast<std::size_t>(context)]};
}

inline std::pair<double, bool> round_regret(const ContinuousEnvironment& env, double y, int arm,
                                            std::span<double> scratch) {
  const int best = env.theta_all(y, scratch);
  return {scratch[static_cast<std::size_t>(best)] - scratch[static_cast<std::size_t>(arm)],
          arm != best};
}

// Sum in ascending order so the aggregate is bit-identical under any
// permutation of the replication results.
inline double sorted_mean(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

inline double sorted_stderr(std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  std::sort(sq.begin(), sq.end());
  double s = 0.0;
  for (double v : sq) s += v;
  const auto r = static_cast<double>(values.size());
  return std::sqrt(s / (r - 1.0) / r);
}

}  // namespace detail

// Simulates `replications` independent runs of `horizon` rounds each and
// aggregates cumulative pseudo-regret, per-arm pulls and per-arm
// non-optimal pulls at the checkpoints. make_agent() must return a fresh
// policy agent exposing
//
//   int select(Context);
//   void update(Context, int arm, int value_index, double value);
//
// Replication r draws its generator from derive_stream_seed(seed, r), so
// the result does not depend on scheduling order.
template <class Env, class MakeAgent>
RegretTrace run_experiment(const Env& env, MakeAgent&& make_agent, const RunOptions& opt) {
  const int K = env.num_arms();
  if (opt.horizon < K)
    throw std::invalid_argument("run_experiment: horizon must be at least the number of arms");
  if (opt.replications < 1) throw std::invalid_argument("run_experiment: replications >= 1");
  if (!opt.replication_seeds.empty() &&
      static_cast<int>(opt.replication_seeds.size()) != opt.replications)
    throw std::invalid_argument("run_experiment: one explicit seed per replication required");

  std::vector<std::int64_t> cps =
      opt.checkpoints.empty() ? default_checkpoints(opt.horizon) : opt.checkpoints;
  if (!std::is_sorted(cps.begin(), cps.end()) ||
      std::adjacent_find(cps.begin(), cps.end()) != cps.end())
    throw std::invalid_argument("run_experiment: checkpoints must be strictly increasing");
  if (cps.front() < 1 || cps.back() > opt.horizon)
    throw std::invalid_argument("run_experiment: checkpoints must lie in [1, horizon]");

  const std::size_t C = cps.size();
  const std::size_t stride = C * (1 + 2 * static_cast<std::size_t>(K));
  std::vector<double> rep_data(static_cast<std::size_t>(opt.replications) * stride);

  parallel_for(opt.replications, opt.threads, [&](int rep) {
    Rng rng = opt.replication_seeds.empty()
                  ? make_stream_rng(opt.seed, static_cast<std::uint64_t>(rep))
                  : Rng(opt.replication_seeds[static_cast<std::size_t>(rep)]);
    auto agent = make_agent();
    std::vector<int> values(static_cast<std::size_t>(K));
    std::vector<double> scratch(static_cast<std::size_t>(K));
    std::vector<std::int64_t> pulls(static_cast<std::size_t>(K), 0);
    std::vector<std::int64_t> nonopt(static_cast<std::size_t>(K), 0);
    double cum = 0.0;
    std::size_t cpi = 0;
    double* out = rep_data.data() + static_cast<std::size_t>(rep) * stride;

    for (std::int64_t t = 1; t <= opt.horizon; ++t) {
      const auto context = env.sample_context(rng);
      env.sample_values(rng, values);
      const int arm = agent.select(context);
      const auto [gap, non_optimal] = detail::round_regret(env, context, arm, scratch);
      cum += gap;
      ++pulls[static_cast<std::size_t>(arm)];
      if (non_optimal) ++nonopt[static_cast<std::size_t>(arm)];
      agent.update(context, arm, values[static_cast<std::size_t>(arm)],
                   env.value_of(arm, values[static_cast<std::size_t>(arm)]));

      if (cpi < C && t == cps[cpi]) {
        out[cpi] = cum;
        for (int j = 0; j < K; ++j) {
          out[C * (1 + static_cast<std::size_t>(j)) + cpi] =
              static_cast<double>(pulls[static_cast<std::size_t>(j)]);
          out[C * (1 + static_cast<std::size_t>(K + j)) + cpi] =
              static_cast<double>(nonopt[static_cast<std::size_t>(j)]);
        }
        ++cpi;
      }
    }
  });

  RegretTrace trace;
  trace.horizon = opt.horizon;
  trace.replications = opt.replications;
  trace.num_arms = K;
  trace.checkpoints = std::move(cps);
  trace.mean_regret.resize(C);
  trace.stderr_regret.resize(C);
  trace.mean_pulls.resize(C * static_cast<std::size_t>(K));
  trace.stderr_pulls.resize(C * static_cast<std::size_t>(K));
  trace.mean_nonopt.resize(C * static_cast<std::size_t>(K));
  trace.stderr_nonopt.resize(C * static_cast<std::size_t>(K));

  std::vector<double> column(static_cast<std::size_t>(opt.replications));
  const auto aggregate = [&](std::size_t series, double& mean, double& se) {
    for (int rep = 0; rep < opt.replications; ++rep)
      column[static_cast<std::size_t>(rep)] =
          rep_data[static_cast<std::size_t>(rep) * stride + series];
    mean = detail::sorted_mean(column);
    se = detail::sorted_stderr(column, mean);
  };

  for (std::size_t c = 0; c < C; ++c) {
    aggregate(c, trace.mean_regret[c], trace.stderr_regret[c]);
    for (std::size_t j = 0; j < static_cast<std::size_t>(K); ++j) {
      aggregate(C * (1 + j) + c, trace.mean_pulls[c * static_cast<std::size_t>(K) + j],
                trace.stderr_pulls[c * static_cast<std::size_t>(K) + j]);
      aggregate(C * (1 + static_cast<std::size_t>(K) + j) + c,
                trace.mean_nonopt[c * static_cast<std::size_t>(K) + j],
                trace.stderr_nonopt[c * static_cast<std::size_t>(K) + j]);
    }
  }
  return trace;
}

}  // namespace cbandit
