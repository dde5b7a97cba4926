#include <catch2/catch_amalgamated.hpp>

#include "cbandit/rng.hpp"

using namespace cbandit;

TEST_CASE("stream derivation is deterministic and separates streams") {
  REQUIRE(derive_stream_seed(42, 0) == derive_stream_seed(42, 0));
  REQUIRE(derive_stream_seed(42, 0) != derive_stream_seed(42, 1));
  REQUIRE(derive_stream_seed(42, 0) != derive_stream_seed(43, 0));

  Rng a = make_stream_rng(7, 3);
  Rng b = make_stream_rng(7, 3);
  for (int i = 0; i < 100; ++i) REQUIRE(a() == b());
}

TEST_CASE("next_unit stays in [0,1)") {
  Rng rng = make_stream_rng(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = next_unit(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("sample_cdf follows the distribution") {
  Rng rng = make_stream_rng(2, 0);
  const std::vector<double> cdf = {0.2, 0.7, 1.0};
  std::vector<int> counts(3, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(sample_cdf(rng, cdf))];
  REQUIRE(std::abs(counts[0] / double(n) - 0.2) < 0.01);
  REQUIRE(std::abs(counts[1] / double(n) - 0.5) < 0.01);
  REQUIRE(std::abs(counts[2] / double(n) - 0.3) < 0.01);
}
