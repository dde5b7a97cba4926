#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbandit {

inline constexpr double kProbTolerance = 1e-9;

// Finite discrete arm-value distribution. values[i] occurs with probability
// probs[i]; the scaled-Bernoulli special case is {0, v} with Pr{v} = p.
struct ArmSpec {
  std::vector<double> values;
  std::vector<double> probs;

  static ArmSpec scaled_bernoulli(double value, double prob) {
    return ArmSpec{{0.0, value}, {1.0 - prob, prob}};
  }

  static ArmSpec bernoulli(double prob) { return scaled_bernoulli(1.0, prob); }

  int num_values() const { return static_cast<int>(values.size()); }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
    return m;
  }

  void validate(const std::string& label = "arm") const {
    if (values.empty()) throw std::invalid_argument(label + ": empty support");
    if (values.size() != probs.size())
      throw std::invalid_argument(label + ": values/probs size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) throw std::invalid_argument(label + ": non-finite value");
      if (probs[i] < 0.0 || probs[i] > 1.0)
        throw std::invalid_argument(label + ": probability outside [0,1]");
      sum += probs[i];
    }
    if (std::abs(sum - 1.0) > kProbTolerance)
      throw std::invalid_argument(label + ": probabilities do not sum to 1");
  }
};

// Discrete context distribution over M values, each with probability > 0.
struct DiscreteContexts {
  std::vector<double> values;
  std::vector<double> probs;

  static DiscreteContexts uniform(std::vector<double> values) {
    const std::size_t m = values.size();
    return DiscreteContexts{std::move(values),
                            std::vector<double>(m, 1.0 / static_cast<double>(m))};
  }

  int num_contexts() const { return static_cast<int>(values.size()); }

  void validate() const {
    if (values.empty()) throw std::invalid_argument("contexts: empty context set");
    if (values.size() != probs.size())
      throw std::invalid_argument("contexts: values/probs size mismatch");
    double sum = 0.0;
    for (double p : probs) {
      if (p <= 0.0 || p > 1.0)
        throw std::invalid_argument("contexts: probabilities must lie in (0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTolerance)
      throw std::invalid_argument("contexts: probabilities do not sum to 1");
  }
};

// Continuous context support: uniform distribution on [lo, hi].
struct ContinuousContexts {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }

  void validate() const {
    if (!(lo < hi)) throw std::invalid_argument("contexts: requires lo < hi");
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw std::invalid_argument("contexts: non-finite bounds");
  }
};

}  // namespace cbandit
