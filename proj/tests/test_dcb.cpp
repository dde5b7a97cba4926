#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "cbandit/dcb.hpp"
#include "cbandit/presets.hpp"

using namespace cbandit;

namespace {

RewardFunction identity_reward() {
  return RewardFunction::custom([](double, double x) { return x; }, 1.0, 0.0);
}

// Two arms whose draws are the constants 0.5 and 0.4; the padding values 0
// and 1 never occur but widen the pooled support so the reward range is 1.
RewardTable two_arm_table() {
  const std::vector<ArmSpec> arms = {ArmSpec{{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}},
                                     ArmSpec{{0.0, 0.4, 1.0}, {0.0, 1.0, 0.0}}};
  return RewardTable({0.5}, arms, identity_reward());
}

}  // namespace

TEST_CASE("construction requires a positive epsilon and arms") {
  const DiscreteEnvironment env = channel_k4();
  REQUIRE_THROWS_AS(DcbPolicy(env.table(), 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(DcbPolicy(env.table(), -0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(RewardTable({1.0}, {}, RewardFunction::min_capacity()),
                    std::invalid_argument);
}

TEST_CASE("initialization pulls each arm once, in order, for any context") {
  const DiscreteEnvironment env = channel_k7();
  DcbPolicy policy(env.table(), 0.01);
  for (int j = 0; j < 7; ++j) {
    REQUIRE(policy.select(j % 4) == j);  // context is ignored during the init round
    REQUIRE_FALSE(policy.initialized());
    policy.update(j, 1);
  }
  REQUIRE(policy.initialized());
  REQUIRE(policy.trial() == 7);
  for (int j = 0; j < 7; ++j) REQUIRE(policy.pull_count(j) == 1);
}

TEST_CASE("an init observation of 0 seeds a zero estimate for every context") {
  const DiscreteEnvironment env = channel_k4();
  DcbPolicy policy(env.table(), 0.01);
  policy.update(0, 0);  // arm 1 observed at value 0
  for (int i = 0; i < 4; ++i) REQUIRE(policy.theta_hat(i, 0) == 0.0);
}

TEST_CASE("index evaluation on a forced state") {
  const RewardTable table = two_arm_table();

  SECTION("equal pulls: higher mean wins") {
    DcbPolicy policy(table, 0.01);
    for (int t = 0; t < 10; ++t) policy.update(0, 1);
    for (int t = 0; t < 10; ++t) policy.update(1, 1);
    REQUIRE_THAT(policy.theta_hat(0, 0), Catch::Matchers::WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(policy.theta_hat(0, 1), Catch::Matchers::WithinAbs(0.4, 1e-12));
    REQUIRE(policy.select(0) == 0);
  }

  SECTION("starved arm wins on its confidence width") {
    DcbPolicy policy(table, 0.01);
    for (int t = 0; t < 100; ++t) policy.update(0, 1);
    for (int t = 0; t < 2; ++t) policy.update(1, 1);
    // At the 103rd trial: 0.5 + sqrt(2.01 ln 103 / 100) vs 0.4 + sqrt(2.01 ln 103 / 2).
    REQUIRE_THAT(policy.index(0, 0), Catch::Matchers::WithinAbs(0.8052180411827186, 1e-9));
    REQUIRE_THAT(policy.index(0, 1), Catch::Matchers::WithinAbs(2.5582174666077520, 1e-9));
    REQUIRE(policy.select(0) == 1);
  }
}

TEST_CASE("ties break to the lowest arm index") {
  const std::vector<ArmSpec> arms = {ArmSpec{{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}},
                                     ArmSpec{{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}}};
  const RewardTable table({0.5}, arms, identity_reward());
  DcbPolicy policy(table, 0.01);
  policy.update(0, 1);
  policy.update(1, 1);
  REQUIRE(policy.select(0) == 0);
}

TEST_CASE("update keeps the incremental mean and touches one column, all rows") {
  const DiscreteEnvironment env = channel_k7();
  DcbPolicy policy(env.table(), 0.01);
  for (int j = 0; j < 7; ++j) policy.update(j, 0);  // init at value 0

  // Pull arm 3 at its high value: column 2 becomes min(y_i, 3)/2, rest stay 0.
  policy.update(2, 1);
  for (int i = 0; i < 4; ++i) {
    const double want = std::min(env.contexts().values[static_cast<std::size_t>(i)], 3.0) / 2.0;
    REQUIRE_THAT(policy.theta_hat(i, 2), Catch::Matchers::WithinAbs(want, 1e-12));
    for (int j = 0; j < 7; ++j) {
      if (j != 2) REQUIRE(policy.theta_hat(i, j) == 0.0);
    }
  }
  REQUIRE(policy.pull_count(2) == 2);
  REQUIRE(policy.trial() == 8);
}

TEST_CASE("incremental mean arithmetic") {
  const RewardTable table = two_arm_table();
  DcbPolicy policy(table, 0.01);
  // Five observations of 0.5 then one padding value 1.0: (0.5*5 + 1) / 6.
  for (int t = 0; t < 5; ++t) policy.update(0, 1);
  policy.update(0, 2);
  REQUIRE_THAT(policy.theta_hat(0, 0), Catch::Matchers::WithinAbs((0.5 * 5 + 1.0) / 6.0, 1e-12));

  // Mean of three observations c, a, b.
  DcbPolicy fresh(table, 0.01);
  fresh.update(1, 1);  // 0.4
  fresh.update(1, 0);  // 0.0
  fresh.update(1, 2);  // 1.0
  REQUIRE_THAT(fresh.theta_hat(0, 1),
               Catch::Matchers::WithinAbs((0.4 + 0.0 + 1.0) / 3.0, 1e-12));
}

TEST_CASE("index is monotone in pulls and trial count") {
  const RewardTable table = two_arm_table();

  // Same trial count, one more pull on arm 1: its index must drop.
  DcbPolicy a(table, 0.01);
  for (int t = 0; t < 5; ++t) a.update(0, 1);
  for (int t = 0; t < 10; ++t) a.update(1, 1);
  DcbPolicy b(table, 0.01);
  for (int t = 0; t < 6; ++t) b.update(0, 1);
  for (int t = 0; t < 9; ++t) b.update(1, 1);
  REQUIRE(b.index(0, 0) < a.index(0, 0));

  // Same pulls on arm 1, larger trial count: its index must grow.
  DcbPolicy c(table, 0.01);
  for (int t = 0; t < 5; ++t) c.update(0, 1);
  for (int t = 0; t < 11; ++t) c.update(1, 1);
  REQUIRE(c.index(0, 0) > a.index(0, 0));
}

TEST_CASE("pull counts always sum to the trial count") {
  const DiscreteEnvironment env = channel_k7();
  DcbPolicy policy(env.table(), 0.01);
  Rng rng = make_stream_rng(31, 0);
  std::vector<int> values(7);
  for (int t = 0; t < 500; ++t) {
    const int ctx = env.sample_context(rng);
    env.sample_values(rng, values);
    const int arm = policy.select(ctx);
    policy.update(arm, values[static_cast<std::size_t>(arm)]);
    std::int64_t total = 0;
    for (int j = 0; j < 7; ++j) total += policy.pull_count(j);
    REQUIRE(total == policy.trial());
  }

  // Estimates are convex combinations of rewards, so they stay inside the
  // per-context reward envelope [0, min(y_i, 7)].
  for (int i = 0; i < 4; ++i) {
    const double hi = std::min(env.contexts().values[static_cast<std::size_t>(i)], 7.0);
    for (int j = 0; j < 7; ++j) {
      REQUIRE(policy.theta_hat(i, j) >= 0.0);
      REQUIRE(policy.theta_hat(i, j) <= hi + 1e-12);
    }
  }
}

TEST_CASE("range checks") {
  const DiscreteEnvironment env = channel_k4();
  DcbPolicy policy(env.table(), 0.01);
  REQUIRE_THROWS_AS(policy.select(4), std::out_of_range);
  REQUIRE_THROWS_AS(policy.select(-1), std::out_of_range);
  REQUIRE_THROWS_AS(policy.update(4, 0), std::out_of_range);
  REQUIRE_THROWS_AS(policy.update(0, 5), std::out_of_range);
}
