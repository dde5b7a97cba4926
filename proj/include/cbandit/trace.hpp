#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace cbandit {

// Log-spaced checkpoint grid: round(10^(k/8)) for k = 0, 1, ... plus the
// horizon itself. Contains every power of ten up to the horizon.
inline std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> cps;
  for (int k = 0;; ++k) {
    const auto v = static_cast<std::int64_t>(std::llround(std::pow(10.0, k / 8.0)));
    if (v > horizon) break;
    cps.push_back(v);
  }
  cps.push_back(horizon);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

// Cumulative pseudo-regret and pull counts at checkpoints, aggregated
// (mean / standard error) across replications.
struct RegretTrace {
  std::int64_t horizon = 0;
  int replications = 0;
  int num_arms = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_regret;    // per checkpoint
  std::vector<double> stderr_regret;  // per checkpoint
  std::vector<double> mean_pulls;     // checkpoints x K
  std::vector<double> stderr_pulls;   // checkpoints x K
  std::vector<double> mean_nonopt;    // checkpoints x K, non-optimal pulls
  std::vector<double> stderr_nonopt;  // checkpoints x K

  int num_checkpoints() const { return static_cast<int>(checkpoints.size()); }

  // Index of an exact checkpoint, or -1.
  int checkpoint_index(std::int64_t n) const {
    const auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), n);
    if (it == checkpoints.end() || *it != n) return -1;
    return static_cast<int>(it - checkpoints.begin());
  }

  double regret_at(int cp) const { return mean_regret[static_cast<std::size_t>(cp)]; }
  double pulls_at(int cp, int arm) const { return mean_pulls[flat(cp, arm)]; }
  double pulls_stderr_at(int cp, int arm) const { return stderr_pulls[flat(cp, arm)]; }
  double nonopt_at(int cp, int arm) const { return mean_nonopt[flat(cp, arm)]; }

 private:
  std::size_t flat(int cp, int arm) const {
    return static_cast<std::size_t>(cp) * static_cast<std::size_t>(num_arms) +
           static_cast<std::size_t>(arm);
  }
};

// CSV schema: trial,mean_regret,stderr,pulls_1,...,pulls_K
inline void write_trace_csv(std::ostream& os, const RegretTrace& trace) {
  os << "trial,mean_regret,stderr";
  for (int j = 0; j < trace.num_arms; ++j) os << ",pulls_" << (j + 1);
  os << "\n";
  char buf[64];
  for (int c = 0; c < trace.num_checkpoints(); ++c) {
    os << trace.checkpoints[static_cast<std::size_t>(c)];
    std::snprintf(buf, sizeof(buf), ",%.8g,%.8g", trace.mean_regret[static_cast<std::size_t>(c)],
                  trace.stderr_regret[static_cast<std::size_t>(c)]);
    os << buf;
    for (int j = 0; j < trace.num_arms; ++j) {
      std::snprintf(buf, sizeof(buf), ",%.8g", trace.pulls_at(c, j));
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace cbandit
