#include <doctest.h>

#include "auditsim/rng.hpp"

using namespace auditsim;

TEST_CASE("schedule stream seed follows the 1009-per-trial offset") {
  CHECK(make_rng_streams(0, 42).schedule.seed() == 42);
  CHECK(make_rng_streams(3, 42).schedule.seed() == 42 + 1009 * 3);
  CHECK(make_rng_streams(29, 7).schedule.seed() == 7 + 1009 * 29);
}

TEST_CASE("identical trial seed gives bitwise-identical draw sequences") {
  RngStreams a = make_rng_streams(5, 42);
  RngStreams b = make_rng_streams(5, 42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.env.gauss(0.0, 1.0) == b.env.gauss(0.0, 1.0));
    CHECK(a.strategy.gauss(0.0, 1.0) == b.strategy.gauss(0.0, 1.0));
  }
  CHECK(a.env == b.env);
  CHECK(a.strategy == b.strategy);
  CHECK(a.schedule == b.schedule);
}

TEST_CASE("env and strategy streams are distinct") {
  RngStreams s = make_rng_streams(0, 42);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) {
    if (s.env.gauss(0.0, 1.0) != s.strategy.gauss(0.0, 1.0)) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("distinct trial seeds give distinct env draws") {
  RngStreams a = make_rng_streams(1, 42);
  RngStreams b = make_rng_streams(2, 42);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) {
    if (a.env.gauss(0.0, 1.0) != b.env.gauss(0.0, 1.0)) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("sample_without_replacement yields k distinct sorted in-range values") {
  RngStream stream(123);
  for (int rep = 0; rep < 50; ++rep) {
    auto sample = stream.sample_without_replacement(12, 4);
    REQUIRE(sample.size() == 4);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      CHECK(sample[i] >= 0);
      CHECK(sample[i] < 12);
      if (i > 0) CHECK(sample[i] > sample[i - 1]);
    }
  }
}

TEST_CASE("binomial degenerate probabilities consume no state") {
  RngStream a(9), b(9);
  CHECK(a.binomial(100, 0.0) == 0);
  CHECK(a.binomial(100, 1.0) == 100);
  CHECK(a == b);
}

TEST_CASE("gauss with zero stddev returns the mean without consuming state") {
  RngStream a(9), b(9);
  CHECK(a.gauss(0.3, 0.0) == 0.3);
  CHECK(a == b);
}
