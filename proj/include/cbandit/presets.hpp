#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbandit/environment.hpp"

namespace cbandit {

// Capacity-limited channel selection: contexts are the number of bits to
// send, uniform over {1,2,3,4}; arm j's capacity is j with probability
// (8-j)/10 and 0 otherwise; the payoff is the bits that get through.
inline DiscreteEnvironment make_channel_env(int num_arms) {
  if (num_arms < 1 || num_arms > 7)
    throw std::invalid_argument("make_channel_env: supports 1 to 7 arms");
  std::vector<ArmSpec> arms;
  arms.reserve(static_cast<std::size_t>(num_arms));
  for (int j = 1; j <= num_arms; ++j)
    arms.push_back(ArmSpec::scaled_bernoulli(static_cast<double>(j), (8.0 - j) / 10.0));
  return DiscreteEnvironment(DiscreteContexts::uniform({1.0, 2.0, 3.0, 4.0}), std::move(arms),
                             RewardFunction::min_capacity(/*bound=*/4.0, /*lipschitz=*/1.0));
}

inline DiscreteEnvironment channel_k7() { return make_channel_env(7); }
inline DiscreteEnvironment channel_k4() { return make_channel_env(4); }

// Power-aware channel selection: the context is the harvested transmit
// power, uniform on (0,1); the same four channel-gain arms; the payoff is
// the rate log(1 + p x). The Lipschitz constant in p is the largest arm
// value, 4.
inline ContinuousEnvironment energy_harvesting_k4() {
  std::vector<ArmSpec> arms;
  for (int j = 1; j <= 4; ++j)
    arms.push_back(ArmSpec::scaled_bernoulli(static_cast<double>(j), (8.0 - j) / 10.0));
  return ContinuousEnvironment(ContinuousContexts{0.0, 1.0}, std::move(arms),
                               RewardFunction::log_power(/*bound=*/std::log(5.0),
                                                         /*lipschitz=*/4.0));
}

inline bool is_preset_name(const std::string& name) {
  return name == "channel-k7" || name == "channel-k4" || name == "energy-harvesting-k4";
}

inline bool preset_is_continuous(const std::string& name) {
  return name == "energy-harvesting-k4";
}

inline int preset_num_arms(const std::string& name) {
  if (name == "channel-k7") return 7;
  if (name == "channel-k4" || name == "energy-harvesting-k4") return 4;
  throw std::invalid_argument("unknown preset: " + name);
}

inline DiscreteEnvironment make_discrete_preset(const std::string& name) {
  if (name == "channel-k7") return channel_k7();
  if (name == "channel-k4") return channel_k4();
  throw std::invalid_argument("unknown discrete preset: " + name);
}

inline ContinuousEnvironment make_continuous_preset(const std::string& name) {
  if (name == "energy-harvesting-k4") return energy_harvesting_k4();
  throw std::invalid_argument("unknown continuous preset: " + name);
}

}  // namespace cbandit
