#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cbandit/arms.hpp"
#include "cbandit/environment.hpp"
#include "cbandit/presets.hpp"
#include "cbandit/reward.hpp"

namespace cbandit {

enum class PolicyType { Dcb, Ucb1, MultiUcb, Ccb, CcbDoubling };

inline std::string policy_type_name(PolicyType t) {
  switch (t) {
    case PolicyType::Dcb: return "dcb";
    case PolicyType::Ucb1: return "ucb1";
    case PolicyType::MultiUcb: return "multi-ucb";
    case PolicyType::Ccb: return "ccb";
    case PolicyType::CcbDoubling: return "ccb-doubling";
  }
  return "?";
}

struct PolicyConfig {
  PolicyType type = PolicyType::Ucb1;
  double epsilon = 0.0;
  double delta = 0.0;      // ccb
  double alpha = 0.0;      // ccb-doubling
  bool scale_bonus = true; // multi-ucb: scale confidence by the context's reward range
};

// Declarative reward choice; "table" carries its own grids.
struct RewardConfig {
  RewardKind kind = RewardKind::MinCapacity;
  double bound = 0.0;
  double lipschitz = 0.0;
  std::vector<double> table_contexts;
  std::vector<double> table_values;
  std::vector<std::vector<double>> table_cells;

  RewardFunction build() const {
    switch (kind) {
      case RewardKind::MinCapacity: return RewardFunction::min_capacity(bound, lipschitz);
      case RewardKind::LogPower: return RewardFunction::log_power(bound, lipschitz);
      case RewardKind::Table:
        return RewardFunction::table(table_contexts, table_values, table_cells, bound, lipschitz);
      case RewardKind::Custom:
        throw std::invalid_argument("custom rewards are not expressible in config files");
    }
    throw std::logic_error("unreachable");
  }
};

// Preset name, or an inline environment description.
struct EnvironmentConfig {
  std::string preset;
  std::optional<DiscreteContexts> discrete_contexts;
  std::optional<ContinuousContexts> continuous_contexts;
  std::vector<ArmSpec> arms;
  RewardConfig reward;

  bool is_preset() const { return !preset.empty(); }
  bool is_continuous() const {
    return is_preset() ? preset_is_continuous(preset) : continuous_contexts.has_value();
  }
  int num_arms() const {
    return is_preset() ? preset_num_arms(preset) : static_cast<int>(arms.size());
  }
};

struct ExperimentConfig {
  std::string name;
  PolicyConfig policy;
  EnvironmentConfig environment;
  std::int64_t horizon = 0;
  int replications = 1;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;
  int threads = 0;
};

// Carries every validation failure, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string s = "invalid configuration:";
    for (const auto& e : errors) s += "\n  - " + e;
    return s;
  }
  std::vector<std::string> errors_;
};

namespace detail {

inline bool get_number(const nlohmann::json& j, const char* key, double& out,
                       std::vector<std::string>& errors) {
  if (!j.contains(key)) return false;
  if (!j[key].is_number()) {
    errors.push_back(std::string(key) + ": expected a number");
    return false;
  }
  out = j[key].get<double>();
  return true;
}

inline std::vector<double> get_double_list(const nlohmann::json& j, const std::string& where,
                                           std::vector<std::string>& errors) {
  std::vector<double> out;
  if (!j.is_array()) {
    errors.push_back(where + ": expected an array of numbers");
    return out;
  }
  for (const auto& v : j) {
    if (!v.is_number()) {
      errors.push_back(where + ": expected an array of numbers");
      return {};
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

inline PolicyConfig parse_policy(const nlohmann::json& j, std::vector<std::string>& errors) {
  PolicyConfig p;
  if (!j.is_object()) {
    errors.push_back("policy: expected an object");
    return p;
  }
  const std::string type = j.value("type", std::string{});
  if (type == "dcb") p.type = PolicyType::Dcb;
  else if (type == "ucb1") p.type = PolicyType::Ucb1;
  else if (type == "multi-ucb") p.type = PolicyType::MultiUcb;
  else if (type == "ccb") p.type = PolicyType::Ccb;
  else if (type == "ccb-doubling") p.type = PolicyType::CcbDoubling;
  else errors.push_back("policy.type: unknown policy '" + type + "'");
  detail::get_number(j, "epsilon", p.epsilon, errors);
  detail::get_number(j, "delta", p.delta, errors);
  detail::get_number(j, "alpha", p.alpha, errors);
  if (j.contains("scale_bonus")) {
    if (!j["scale_bonus"].is_boolean()) errors.push_back("policy.scale_bonus: expected a boolean");
    else p.scale_bonus = j["scale_bonus"].get<bool>();
  }
  return p;
}

inline EnvironmentConfig parse_environment(const nlohmann::json& j,
                                           std::vector<std::string>& errors) {
  EnvironmentConfig env;
  if (j.is_string()) {
    env.preset = j.get<std::string>();
    if (!is_preset_name(env.preset))
      errors.push_back("environment: unknown preset '" + env.preset + "'");
    return env;
  }
  if (!j.is_object()) {
    errors.push_back("environment: expected a preset name or an object");
    return env;
  }

  if (j.contains("contexts")) {
    const auto& c = j["contexts"];
    if (c.is_object() && c.contains("values")) {
      DiscreteContexts dc;
      dc.values = detail::get_double_list(c["values"], "environment.contexts.values", errors);
      if (c.contains("probs"))
        dc.probs = detail::get_double_list(c["probs"], "environment.contexts.probs", errors);
      else
        dc.probs.assign(dc.values.size(), dc.values.empty() ? 0.0 : 1.0 / dc.values.size());
      env.discrete_contexts = std::move(dc);
    } else if (c.is_object() && c.contains("lo") && c.contains("hi")) {
      ContinuousContexts cc;
      detail::get_number(c, "lo", cc.lo, errors);
      detail::get_number(c, "hi", cc.hi, errors);
      env.continuous_contexts = cc;
    } else {
      errors.push_back("environment.contexts: expected {values[,probs]} or {lo,hi}");
    }
  } else {
    errors.push_back("environment.contexts: missing");
  }

  if (j.contains("arms") && j["arms"].is_array()) {
    int idx = 0;
    for (const auto& a : j["arms"]) {
      ++idx;
      const std::string where = "environment.arms[" + std::to_string(idx) + "]";
      if (a.is_object() && a.contains("value") && a.contains("prob")) {
        double v = 0.0, p = 0.0;
        detail::get_number(a, "value", v, errors);
        detail::get_number(a, "prob", p, errors);
        env.arms.push_back(ArmSpec::scaled_bernoulli(v, p));
      } else if (a.is_object() && a.contains("values") && a.contains("probs")) {
        ArmSpec spec;
        spec.values = detail::get_double_list(a["values"], where + ".values", errors);
        spec.probs = detail::get_double_list(a["probs"], where + ".probs", errors);
        env.arms.push_back(std::move(spec));
      } else {
        errors.push_back(where + ": expected {value,prob} or {values,probs}");
      }
    }
  } else {
    errors.push_back("environment.arms: missing or not an array");
  }

  if (j.contains("reward")) {
    const auto& r = j["reward"];
    const std::string kind = r.is_object() ? r.value("kind", std::string{}) : std::string{};
    if (kind == "min" || kind == "min-capacity") env.reward.kind = RewardKind::MinCapacity;
    else if (kind == "log" || kind == "log-power") env.reward.kind = RewardKind::LogPower;
    else if (kind == "table") env.reward.kind = RewardKind::Table;
    else errors.push_back("environment.reward.kind: expected min|log|table");
    if (r.is_object()) {
      detail::get_number(r, "bound", env.reward.bound, errors);
      detail::get_number(r, "lipschitz", env.reward.lipschitz, errors);
      if (env.reward.kind == RewardKind::Table) {
        if (r.contains("contexts") && r.contains("values") && r.contains("cells")) {
          env.reward.table_contexts =
              detail::get_double_list(r["contexts"], "environment.reward.contexts", errors);
          env.reward.table_values =
              detail::get_double_list(r["values"], "environment.reward.values", errors);
          for (const auto& row : r["cells"])
            env.reward.table_cells.push_back(
                detail::get_double_list(row, "environment.reward.cells", errors));
        } else {
          errors.push_back("environment.reward: table kind needs contexts, values and cells");
        }
      }
    }
  } else {
    errors.push_back("environment.reward: missing");
  }
  return env;
}

// Structural parse of a config document. Throws ConfigError listing every
// problem found; run semantic checks with validate() afterwards.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
  std::vector<std::string> errors;
  ExperimentConfig cfg;
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});

  cfg.name = j.value("name", std::string{});
  if (j.contains("policy")) cfg.policy = parse_policy(j["policy"], errors);
  else errors.push_back("policy: missing");
  if (j.contains("environment")) cfg.environment = parse_environment(j["environment"], errors);
  else errors.push_back("environment: missing");

  if (j.contains("horizon") && j["horizon"].is_number_integer())
    cfg.horizon = j["horizon"].get<std::int64_t>();
  else errors.push_back("horizon: missing or not an integer");
  if (j.contains("replications")) {
    if (j["replications"].is_number_integer()) cfg.replications = j["replications"].get<int>();
    else errors.push_back("replications: expected an integer");
  }
  if (j.contains("seed")) {
    if (j["seed"].is_number_integer()) cfg.seed = j["seed"].get<std::uint64_t>();
    else errors.push_back("seed: expected an integer");
  }
  if (j.contains("threads")) {
    if (j["threads"].is_number_integer()) cfg.threads = j["threads"].get<int>();
    else errors.push_back("threads: expected an integer");
  }
  if (j.contains("checkpoints")) {
    if (j["checkpoints"].is_array()) {
      for (const auto& v : j["checkpoints"]) {
        if (v.is_number_integer()) cfg.checkpoints.push_back(v.get<std::int64_t>());
        else errors.push_back("checkpoints: expected integers");
      }
    } else {
      errors.push_back("checkpoints: expected an array");
    }
  }

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("malformed document: ") + e.what()});
  }
  return parse_config(j);
}

// Semantic validation; returns every violation found.
inline std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  const auto& env = cfg.environment;
  const auto& pol = cfg.policy;

  bool env_known = true;
  if (env.is_preset()) {
    if (!is_preset_name(env.preset)) {
      errors.push_back("environment: unknown preset '" + env.preset + "'");
      env_known = false;
    }
  } else {
    const bool has_d = env.discrete_contexts.has_value();
    const bool has_c = env.continuous_contexts.has_value();
    if (has_d == has_c) {
      errors.push_back("environment: exactly one context kind (discrete or continuous) required");
      env_known = false;
    }
    if (env.arms.empty()) errors.push_back("environment: at least one arm required");
    try {
      if (has_d) env.discrete_contexts->validate();
      if (has_c) env.continuous_contexts->validate();
      for (std::size_t k = 0; k < env.arms.size(); ++k)
        env.arms[k].validate("environment.arms[" + std::to_string(k + 1) + "]");
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }

  if (pol.type == PolicyType::Dcb || pol.type == PolicyType::Ccb) {
    if (!(pol.epsilon > 0.0))
      errors.push_back(policy_type_name(pol.type) + ": requires epsilon > 0");
  }
  if (pol.type == PolicyType::Ucb1 && pol.epsilon < 0.0)
    errors.push_back("ucb1: requires epsilon >= 0");
  if (pol.type == PolicyType::Ccb && !(pol.delta > 0.0))
    errors.push_back("ccb: requires delta > 0");
  if (pol.type == PolicyType::CcbDoubling && (pol.alpha < 0.0 || pol.alpha > 1.0))
    errors.push_back("ccb-doubling: requires alpha in [0,1]");

  if (env_known) {
    const bool continuous = env.is_continuous();
    const bool compatible =
        continuous ? (pol.type == PolicyType::Ccb || pol.type == PolicyType::CcbDoubling ||
                      pol.type == PolicyType::Ucb1)
                   : (pol.type == PolicyType::Dcb || pol.type == PolicyType::MultiUcb ||
                      pol.type == PolicyType::Ucb1);
    if (!compatible)
      errors.push_back("policy '" + policy_type_name(pol.type) + "' is incompatible with a " +
                       (continuous ? "continuous" : "discrete") + " environment");
    if (continuous && pol.type == PolicyType::Ccb && pol.delta > 0.0) {
      double width = 1.0;
      if (env.is_preset()) width = 1.0;  // energy-harvesting-k4 support (0,1)
      else if (env.continuous_contexts) width = env.continuous_contexts->width();
      if (pol.delta > width * (1.0 + 1e-12))
        errors.push_back("ccb: delta exceeds the context support width");
    }
    const int k = env_known ? env.num_arms() : 0;
    if (k > 0 && cfg.horizon < k)
      errors.push_back("horizon: must be at least the number of arms");
  }

  if (cfg.horizon < 1) errors.push_back("horizon: must be positive");
  if (cfg.replications < 1) errors.push_back("replications: must be >= 1");
  if (!cfg.checkpoints.empty()) {
    for (auto c : cfg.checkpoints) {
      if (c < 1 || c > cfg.horizon) {
        errors.push_back("checkpoints: entries must lie in [1, horizon]");
        break;
      }
    }
    if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end()))
      errors.push_back("checkpoints: must be strictly increasing");
  }
  return errors;
}

using EnvironmentVariant = std::variant<DiscreteEnvironment, ContinuousEnvironment>;

inline EnvironmentVariant build_environment(const EnvironmentConfig& env) {
  if (env.is_preset()) {
    if (preset_is_continuous(env.preset)) return make_continuous_preset(env.preset);
    return make_discrete_preset(env.preset);
  }
  const RewardFunction reward = env.reward.build();
  if (env.continuous_contexts)
    return ContinuousEnvironment(*env.continuous_contexts, env.arms, reward);
  if (env.discrete_contexts)
    return DiscreteEnvironment(*env.discrete_contexts, env.arms, reward);
  throw std::invalid_argument("environment: no contexts given");
}

}  // namespace cbandit
