#pragma once

#include <memory>
#include <stdexcept>
#include <utility>

#include "cbandit/ccb.hpp"
#include "cbandit/config.hpp"
#include "cbandit/dcb.hpp"
#include "cbandit/doubling.hpp"
#include "cbandit/environment.hpp"
#include "cbandit/multi_ucb.hpp"
#include "cbandit/runner.hpp"
#include "cbandit/ucb1.hpp"

namespace cbandit {

// Agents bind a policy to the simulation loop's uniform
// select(context) / update(context, arm, value_index, value) protocol.

struct DcbAgent {
  DcbPolicy policy;
  int select(int context) const { return policy.select(context); }
  void update(int /*context*/, int arm, int value_index, double /*value*/) {
    policy.update(arm, value_index);
  }
};

// Context-blind baseline for discrete problems. It ignores the context
// when choosing but, like any player of this game, it observes the
// realized reward g(y, x), and that is what it averages.
struct DiscreteUcb1Agent {
  const RewardTable* table;
  Ucb1Policy policy;
  int select(int) const { return policy.select(); }
  void update(int context, int arm, int value_index, double /*value*/) {
    policy.update(arm, table->reward(context, arm, value_index));
  }
};

// Context-blind baseline for continuous problems: treats the revealed arm
// state itself as the payoff, the standard-bandit framing where reward and
// state coincide.
struct ContinuousUcb1Agent {
  Ucb1Policy policy;
  int select(double) const { return policy.select(); }
  void update(double, int arm, int /*value_index*/, double value) { policy.update(arm, value); }
};

struct MultiUcbAgent {
  const RewardTable* table;
  MultiUcbPolicy policy;
  int select(int context) const { return policy.select(context); }
  void update(int context, int arm, int value_index, double /*value*/) {
    policy.update(context, arm, table->reward(context, arm, value_index));
  }
};

struct CcbAgent {
  CcbPolicy policy;
  int select(double y) const { return policy.select(y); }
  void update(double y, int arm, int value_index, double /*value*/) {
    policy.update(y, arm, value_index);
  }
};

struct DoublingCcbAgent {
  DoublingCcbPolicy policy;
  int select(double y) const { return policy.select(y); }
  void update(double y, int arm, int value_index, double /*value*/) {
    policy.update(y, arm, value_index);
  }
};

// Independent per-bin learner over a quantized continuous context. Updates
// use the realized reward at the true context; quantization only routes the
// statistics.
struct QuantizedMultiUcbAgent {
  ContextQuantizer quantizer;
  const RewardFunction* reward;
  MultiUcbPolicy policy;
  int select(double y) const { return policy.select(quantizer.bin(y)); }
  void update(double y, int arm, int /*value_index*/, double value) {
    policy.update(quantizer.bin(y), arm, (*reward)(y, value));
  }
};

// Plays the contextually optimal arm; useful as a zero-regret reference.
struct GenieAgent {
  const GenieTables* genie;
  int select(int context) const {
    return genie->h_star[static_cast<std::size_t>(context)];
  }
  void update(int, int, int, double) {}
};

inline RunOptions run_options_from(const ExperimentConfig& cfg) {
  RunOptions opt;
  opt.horizon = cfg.horizon;
  opt.replications = cfg.replications;
  opt.seed = cfg.seed;
  opt.checkpoints = cfg.checkpoints;
  opt.threads = cfg.threads;
  return opt;
}

// Validates, builds the environment and dispatches the configured policy.
inline RegretTrace run_config(const ExperimentConfig& cfg) {
  if (auto errors = validate(cfg); !errors.empty()) throw ConfigError(std::move(errors));
  const RunOptions opt = run_options_from(cfg);
  const PolicyConfig& pol = cfg.policy;
  EnvironmentVariant env = build_environment(cfg.environment);

  if (std::holds_alternative<DiscreteEnvironment>(env)) {
    const auto& denv = std::get<DiscreteEnvironment>(env);
    switch (pol.type) {
      case PolicyType::Dcb:
        return run_experiment(
            denv, [&] { return DcbAgent{DcbPolicy(denv.table(), pol.epsilon)}; }, opt);
      case PolicyType::Ucb1:
        return run_experiment(
            denv,
            [&] {
              return DiscreteUcb1Agent{&denv.table(), Ucb1Policy(denv.num_arms(), pol.epsilon)};
            },
            opt);
      case PolicyType::MultiUcb:
        return run_experiment(
            denv,
            [&] {
              return MultiUcbAgent{
                  &denv.table(),
                  MultiUcbPolicy(denv.num_contexts(), denv.num_arms(),
                                 pol.scale_bonus ? denv.table().ranges()
                                                 : std::vector<double>{})};
            },
            opt);
      default:
        throw std::invalid_argument("policy incompatible with a discrete environment");
    }
  }

  const auto& cenv = std::get<ContinuousEnvironment>(env);
  switch (pol.type) {
    case PolicyType::Ucb1:
      return run_experiment(
          cenv, [&] { return ContinuousUcb1Agent{Ucb1Policy(cenv.num_arms(), pol.epsilon)}; },
          opt);
    case PolicyType::Ccb:
      return run_experiment(
          cenv,
          [&] {
            return CcbAgent{CcbPolicy(cenv.arms(), cenv.reward_fn(), cenv.contexts().lo,
                                      cenv.contexts().hi, pol.epsilon, pol.delta)};
          },
          opt);
    case PolicyType::CcbDoubling:
      return run_experiment(
          cenv,
          [&] {
            return DoublingCcbAgent{DoublingCcbPolicy(cenv.arms(), cenv.reward_fn(),
                                                      cenv.contexts().lo, cenv.contexts().hi,
                                                      pol.epsilon, pol.alpha)};
          },
          opt);
    default:
      throw std::invalid_argument("policy incompatible with a continuous environment");
  }
}

}  // namespace cbandit
