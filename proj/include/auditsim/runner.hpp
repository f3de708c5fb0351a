#pragma once

#include <string>
#include <vector>

#include "auditsim/game.hpp"
#include "auditsim/metrics.hpp"
#include "auditsim/policies.hpp"
#include "auditsim/strategies.hpp"

namespace auditsim {

// Declarative sweep: environment, seed list, and the strategy x policy grid.
struct SweepConfig {
  GameConfig env;
  std::vector<int> seeds;  // explicit list; default 0..S-1
  std::vector<StrategySpec> strategies;
  std::vector<PolicySpec> policies;
  bool include_trajectories = false;

  void validate() const;
};

// Parses and validates a YAML sweep config. Throws ConfigError with a
// distinct diagnostic for missing file, parse failure, unknown registry
// names, and invalid parameter ranges.
SweepConfig load_config(const std::string& path);

// One strategy x policy cell: per-seed metrics plus mean +- standard error.
struct CellAggregate {
  std::string strategy;
  std::string policy;
  std::vector<CellMetrics> per_seed;
  std::vector<Trajectory> trajectories;  // populated only when requested
  CellMetrics mean;
  CellMetrics se;
  // realized_K aggregates kept separately; the per-seed value is integral
  // but its mean need not be.
  double mean_realized_K = 0.0;
  double se_realized_K = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<CellAggregate> cells;
};

// Runs every seed of one cell with fresh strategy/policy instances and
// independent per-trial streams.
CellAggregate run_cell(const SweepConfig& config, const StrategySpec& strategy,
                       const PolicySpec& policy);

// Runs the whole grid. jobs > 1 parallelizes over cells; results are
// reduced in grid order so the output is identical either way.
SweepResult run_sweep(const SweepConfig& config, int jobs = 1);

// Canonical JSON serialization: stable key order, so identical runs produce
// byte-identical output.
std::string to_json(const SweepResult& result);

// Writes <out_dir>/sweep.json (creating out_dir if needed) and returns the
// file path.
std::string write_sweep(const SweepResult& result, const std::string& out_dir);

}  // namespace auditsim
