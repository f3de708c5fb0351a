#include "auditsim/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace auditsim {
namespace {

// splitmix64 finalizer; spreads (trial_seed, tag) pairs over the full
// 64-bit seed space so the env and strategy engines never collide.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-stream domain-separation tags: arbitrary distinct constants mixed
// with the trial seed so the engines never collide.
constexpr std::uint64_t kEnvTag = 0x766E65ULL;
constexpr std::uint64_t kStrategyTag = 0x737200ULL;

}  // namespace

double RngStream::gauss(double mean, double stddev) {
  if (stddev <= 0.0) return mean;
  std::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

int RngStream::binomial(int n, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<int> dist(n, p);
  return dist(engine_);
}

std::vector<int> RngStream::sample_without_replacement(int population, int k) {
  if (k < 0 || k > population) {
    throw std::invalid_argument("sample_without_replacement: k out of range");
  }
  std::vector<int> pool(population);
  for (int i = 0; i < population; ++i) pool[i] = i;
  // Partial Fisher-Yates: the first k slots end up holding the sample.
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> dist(i, population - 1);
    std::swap(pool[i], pool[dist(engine_)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

RngStreams make_rng_streams(std::uint64_t trial_seed,
                            std::uint64_t schedule_seed_base) {
  return RngStreams{
      RngStream(mix64(trial_seed ^ (kEnvTag << 32))),
      RngStream(mix64(trial_seed ^ (kStrategyTag << 32))),
      RngStream(schedule_seed_base + 1009ULL * trial_seed),
  };
}

}  // namespace auditsim
