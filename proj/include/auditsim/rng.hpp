#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace auditsim {

// A seeded random source with a call-level draw contract: every method
// constructs its distribution object fresh, so the engine state after a
// sequence of calls depends only on that call sequence. This is what the
// stream-alignment tests rely on.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double gauss(double mean, double stddev);

  // Number of successes in n Bernoulli(p) trials. p outside (0,1) is
  // handled without consuming engine state.
  int binomial(int n, double p);

  // k distinct values from {0, ..., population-1}, returned sorted.
  std::vector<int> sample_without_replacement(int population, int k);

  std::uint64_t seed() const { return seed_; }

  friend bool operator==(const RngStream& a, const RngStream& b) {
    return a.engine_ == b.engine_;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// The three per-trial streams. Keeping truth noise, auditee stochasticity,
// and schedule draws on separate engines means adding draws to one cannot
// shift the others.
struct RngStreams {
  RngStream env;
  RngStream strategy;
  RngStream schedule;
};

// Derives the three streams from a trial seed. The schedule stream is
// seeded at schedule_seed_base + 1009 * trial_seed so each trial draws an
// independent committed schedule.
RngStreams make_rng_streams(std::uint64_t trial_seed,
                            std::uint64_t schedule_seed_base);

}  // namespace auditsim
