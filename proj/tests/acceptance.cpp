// Acceptance suite: end-to-end checks of the shipped policies against the
// reference tables, the bound checks and the structural invariants, each
// printed as a single pass/fail line. Run with a criterion number 1-10 or
// "all". Exits with the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cbandit/analysis.hpp"
#include "cbandit/experiment.hpp"
#include "cbandit/presets.hpp"
#include "cbandit/reproduce.hpp"

using namespace cbandit;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass;
  std::string detail;
};

bool within_pct(double value, double reference, double pct) {
  return std::abs(value - reference) <= pct * std::abs(reference);
}

// ---------------------------------------------------------------------
// 1. Final regret ordering dcb < multi-ucb < ucb1 on both channel
//    instances at T = 1e5, with every mean within +-50% of its reference.
Outcome criterion1() {
  ReproduceOptions opt;
  opt.seed = kSeed;
  const ReproReport report = reproduce_table1(opt);
  std::ostringstream d;
  bool pass = report.ordering_ok();
  for (const auto& v : report.violations) d << v << "; ";
  for (const auto& c : report.cells) {
    d << c.policy << "@" << c.setting << "=" << c.mean << " (ref " << c.reference << ") ";
    if (!within_pct(c.mean, c.reference, 0.50)) {
      pass = false;
      d << "OUT-OF-TOLERANCE ";
    }
  }
  return {pass, d.str()};
}

// ---------------------------------------------------------------------
// 2. With no non-optimal arm the regret is bounded: small at T = 1e5 and
//    flat over the last decade.
Outcome criterion2() {
  const DiscreteEnvironment env = channel_k4();
  RunOptions opt;
  opt.horizon = 100000;
  opt.replications = 20;
  opt.seed = kSeed;
  opt.checkpoints = {10000, 100000};
  const auto trace = run_experiment(
      env, [&] { return DcbAgent{DcbPolicy(env.table(), 0.01)}; }, opt);
  const double r10k = trace.mean_regret[0];
  const double r100k = trace.mean_regret[1];
  const bool small = r100k < 100.0;
  const bool flat = r100k - r10k <= 0.10 * r10k;
  std::ostringstream d;
  d << "regret(1e5)=" << r100k << " (<100: " << (small ? "yes" : "NO") << "), regret(1e4)="
    << r10k << ", tail growth=" << (r100k - r10k) << " vs allowed " << 0.10 * r10k;
  return {small && flat, d.str()};
}

// ---------------------------------------------------------------------
// 3. Logarithmic growth on channel-k7: positive fitted slope of regret vs
//    ln n over the last decade, stable between half-windows within 20%,
//    and below the theorem3 coefficient.
Outcome criterion3() {
  const DiscreteEnvironment env = channel_k7();
  RunOptions opt;
  opt.horizon = 100000;
  opt.replications = 50;
  opt.seed = kSeed;
  const auto trace = run_experiment(
      env, [&] { return DcbAgent{DcbPolicy(env.table(), 0.01)}; }, opt);
  const TailSlopeFit fit = fit_tail_slope(trace);
  const BoundReport bound = check_theorem3_slope(env.genie(), trace, 0.01);

  const bool positive = fit.slope > 0.0;
  const double mean_half = 0.5 * (std::abs(fit.half1_slope) + std::abs(fit.half2_slope));
  const bool stable = std::abs(fit.half1_slope - fit.half2_slope) <= 0.20 * mean_half;
  std::ostringstream d;
  d << "slope=" << fit.slope << " halves=(" << fit.half1_slope << "," << fit.half2_slope
    << ") coeff=" << bound.bound;
  return {positive && stable && bound.satisfied, d.str()};
}

// ---------------------------------------------------------------------
// 4. Plain ucb1 grows linearly on channel-k7: doubling the horizon roughly
//    doubles the regret.
Outcome criterion4() {
  const DiscreteEnvironment env = channel_k7();
  RunOptions opt;
  opt.horizon = 100000;
  opt.replications = 20;
  opt.seed = kSeed;
  opt.checkpoints = {25000, 50000, 100000};
  const auto trace = run_experiment(
      env, [&] { return DiscreteUcb1Agent{&env.table(), Ucb1Policy(env.num_arms(), 0.0)}; },
      opt);
  const double ratio1 = trace.mean_regret[1] / trace.mean_regret[0];
  const double ratio2 = trace.mean_regret[2] / trace.mean_regret[1];
  const bool ok = ratio1 >= 1.7 && ratio1 <= 2.1 && ratio2 >= 1.7 && ratio2 <= 2.1;
  std::ostringstream d;
  d << "R(50k)/R(25k)=" << ratio1 << " R(100k)/R(50k)=" << ratio2 << " (allowed [1.7, 2.1])";
  return {ok, d.str()};
}

// ---------------------------------------------------------------------
// 5. theorem1 ceilings for arms 5-7 on channel-k7 at n in {1e3,1e4,1e5},
//    50 replications, 3-sigma slack.
Outcome criterion5() {
  const DiscreteEnvironment env = channel_k7();
  RunOptions opt;
  opt.horizon = 100000;
  opt.replications = 50;
  opt.seed = kSeed;
  opt.checkpoints = {1000, 10000, 100000};
  const auto trace = run_experiment(
      env, [&] { return DcbAgent{DcbPolicy(env.table(), 0.01)}; }, opt);
  bool pass = true;
  std::ostringstream d;
  for (int arm : env.genie().non_optimal_set) {
    for (std::int64_t n : opt.checkpoints) {
      const BoundReport r = check_theorem1(env.genie(), trace, 0.01, n, arm);
      pass = pass && r.satisfied;
      d << "arm" << arm + 1 << "@n=" << n << ": " << r.observed << (r.satisfied ? " <= " : " > ")
        << r.bound << "+" << r.slack << "; ";
    }
  }
  return {pass, d.str()};
}

// ---------------------------------------------------------------------
// 6. theorem2 flatness: non-optimal pulls of each optimal arm grow by at
//    most 2 over the last decade on channel-k7.
Outcome criterion6() {
  const DiscreteEnvironment env = channel_k7();
  RunOptions opt;
  opt.horizon = 100000;
  opt.replications = 50;
  opt.seed = kSeed;
  const auto trace = run_experiment(
      env, [&] { return DcbAgent{DcbPolicy(env.table(), 0.01)}; }, opt);
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : check_theorem2_flatness(env.genie(), trace, 2.0)) {
    pass = pass && r.satisfied;
    d << r.name << ": +" << r.observed << "; ";
  }
  return {pass, d.str()};
}

// ---------------------------------------------------------------------
// 7. lemma1: starvation frequency of the optimal arm under ucb1(0) stays
//    below the probability ceiling on every qualifying grid point.
Outcome criterion7() {
  const auto reports = check_lemma1(2, {0.9, 0.1}, 0.0, {150, 300, 600}, 20000, kSeed);
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : reports) {
    pass = pass && r.satisfied;
    d << r.name << ": freq=" << r.observed << " bound=" << r.bound << "+" << r.slack << "; ";
  }
  return {pass, d.str()};
}

// ---------------------------------------------------------------------
// 8. Final regret orderings for the harvesting instance at T = 1e6 across
//    the three quantization widths, values within +-60%.
Outcome criterion8() {
  ReproduceOptions opt;
  opt.seed = kSeed;
  const ReproReport report = reproduce_table2(opt);
  bool pass = report.ordering_ok();
  std::ostringstream d;
  for (const auto& v : report.violations) d << v << "; ";
  for (const auto& c : report.cells) {
    d << c.policy << "@" << c.setting << "=" << c.mean << " (ref " << c.reference << ") ";
    if (!within_pct(c.mean, c.reference, 0.60)) {
      pass = false;
      d << "OUT-OF-TOLERANCE ";
    }
  }
  return {pass, d.str()};
}

// ---------------------------------------------------------------------
// 9. With a single context and the identity reward over {0,1}-valued arms
//    the context-aware policy degenerates to plain ucb1(eps): identical
//    arm sequences, trial for trial.
Outcome criterion9() {
  const std::vector<double> means = {0.8, 0.5, 0.3};
  std::vector<ArmSpec> arms;
  for (double m : means) arms.push_back(ArmSpec::bernoulli(m));
  const RewardFunction identity =
      RewardFunction::custom([](double, double x) { return x; }, 1.0, 0.0);
  const RewardTable table({1.0}, arms, identity);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    DcbPolicy dcb(table, 0.01);
    Ucb1Policy ucb(3, 0.01);
    Rng rng = make_stream_rng(seed, 0);
    for (int t = 0; t < 10000; ++t) {
      const int a = dcb.select(0);
      const int b = ucb.select();
      if (a != b) {
        std::ostringstream d;
        d << "sequences diverge at seed " << seed << " trial " << t + 1 << ": " << a + 1
          << " vs " << b + 1;
        return {false, d.str()};
      }
      std::vector<int> value_idx(3);
      for (int j = 0; j < 3; ++j)
        value_idx[static_cast<std::size_t>(j)] =
            next_unit(rng) < means[static_cast<std::size_t>(j)] ? 1 : 0;
      dcb.update(a, value_idx[static_cast<std::size_t>(a)]);
      ucb.update(b, static_cast<double>(value_idx[static_cast<std::size_t>(b)]));
    }
  }
  return {true, "identical sequences over 1e4 trials for 5 seeds"};
}

// ---------------------------------------------------------------------
// 10. Structural spot checks: the exact reward matrix, the harvesting
//     optimal set, quantizer geometry and the index arithmetic examples.
Outcome criterion10() {
  std::ostringstream d;
  bool pass = true;
  const auto fail = [&](const std::string& what) {
    pass = false;
    d << what << "; ";
  };

  // Reference expected-reward matrix, entry for entry.
  const double want[4][7] = {{0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1},
                             {0.7, 1.2, 1.0, 0.8, 0.6, 0.4, 0.2},
                             {0.7, 1.2, 1.5, 1.2, 0.9, 0.6, 0.3},
                             {0.7, 1.2, 1.5, 1.6, 1.2, 0.8, 0.4}};
  const DiscreteEnvironment k7 = channel_k7();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 7; ++j) {
      if (std::abs(k7.genie().theta_at(i, j) - want[i][j]) > 1e-12)
        fail("theta(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") mismatch");
    }
  }
  if (k7.genie().non_optimal_set != std::vector<int>{4, 5, 6}) fail("non-optimal set != {5,6,7}");

  // Harvesting optimal set is arms {3, 4} over the whole support.
  const ContinuousEnvironment eh = energy_harvesting_k4();
  bool saw3 = false, saw4 = false;
  for (int k = 1; k < 400; ++k) {
    const int best = eh.best_arm(k / 400.0).arm;
    if (best != 2 && best != 3) fail("harvesting optimum outside {3,4}");
    saw3 |= best == 2;
    saw4 |= best == 3;
  }
  if (!(saw3 && saw4)) fail("harvesting optimum does not switch between 3 and 4");

  // Randomized quantizer geometry.
  Rng rng = make_stream_rng(kSeed, 99);
  for (int t = 0; t < 300; ++t) {
    const double lo = -1.0 + 2.0 * next_unit(rng);
    const double width = 0.05 + 2.0 * next_unit(rng);
    const double delta = width * (0.01 + 0.99 * next_unit(rng));
    const ContextQuantizer q(lo, lo + width, delta);
    const double y = lo + width * next_unit(rng);
    const int b = q.bin(y);
    if (b < 0 || b >= q.num_bins()) fail("bin out of range");
    else if (std::abs(y - q.center(b)) > delta / 2.0 + 1e-12) fail("center too far from y");
  }

  // Index arithmetic, forced state: means 0.5/0.4 with pulls 100/2.
  const RewardFunction identity =
      RewardFunction::custom([](double, double x) { return x; }, 1.0, 0.0);
  const std::vector<ArmSpec> arms = {ArmSpec{{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}},
                                     ArmSpec{{0.0, 0.4, 1.0}, {0.0, 1.0, 0.0}}};
  const RewardTable table({0.5}, arms, identity);
  DcbPolicy policy(table, 0.01);
  for (int t = 0; t < 100; ++t) policy.update(0, 1);
  for (int t = 0; t < 2; ++t) policy.update(1, 1);
  if (policy.select(0) != 1) fail("starved arm not selected");
  if (std::abs(policy.index(0, 0) - 0.8052180411827186) > 1e-9) fail("index(arm1) mismatch");
  if (std::abs(policy.index(0, 1) - 2.5582174666077520) > 1e-9) fail("index(arm2) mismatch");

  if (pass) d << "reward matrix, optimal sets, quantizer and index arithmetic all verified";
  return {pass, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"table1 ordering and tolerances", criterion1},
      {"bounded regret with no non-optimal arms", criterion2},
      {"logarithmic dcb growth on channel-k7", criterion3},
      {"linear ucb1 growth on channel-k7", criterion4},
      {"theorem1 compliance for arms 5-7", criterion5},
      {"theorem2 compliance for optimal arms", criterion6},
      {"lemma1 compliance on the qualifying grid", criterion7},
      {"table2 ordering and tolerances", criterion8},
      {"degeneration to ucb1 with one context", criterion9},
      {"unit and property spot checks", criterion10},
  };

  int first = 1, last = 10;
  if (argc > 1 && std::strcmp(argv[1], "all") != 0) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 10) {
      std::fprintf(stderr, "usage: %s [1-10|all]\n", argv[0]);
      return 64;
    }
  }

  int failures = 0;
  for (int i = first; i <= last; ++i) {
    const auto& [label, fn] = criteria[static_cast<std::size_t>(i - 1)];
    Outcome outcome{false, "exception"};
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s — %s\n", outcome.pass ? "PASS" : "FAIL", i, label,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
