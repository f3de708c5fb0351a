#include "auditsim/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>

#include <yaml-cpp/yaml.h>
#include <json.hpp>

#include "auditsim/errors.hpp"

namespace auditsim {
namespace {

using ordered_json = nlohmann::ordered_json;

std::map<std::string, double> parse_params(const YAML::Node& node,
                                           const std::string& context) {
  std::map<std::string, double> params;
  if (!node) return params;
  if (!node.IsMap()) {
    throw ConfigError(context + ": 'params' must be a key-value map");
  }
  for (const auto& kv : node) {
    params[kv.first.as<std::string>()] = kv.second.as<double>();
  }
  return params;
}

template <typename Spec>
std::vector<Spec> parse_specs(const YAML::Node& node, const std::string& key) {
  if (!node || !node.IsSequence() || node.size() == 0) {
    throw ConfigError("config: '" + key + "' must be a non-empty list");
  }
  std::vector<Spec> specs;
  for (const auto& entry : node) {
    Spec spec;
    if (!entry["name"]) {
      throw ConfigError("config: every " + key + " entry needs a 'name'");
    }
    spec.name = entry["name"].template as<std::string>();
    spec.params = parse_params(entry["params"], key + " '" + spec.name + "'");
    specs.push_back(spec);
  }
  return specs;
}

// Per-field accessors so mean/SE aggregation stays in one place.
struct MetricField {
  const char* name;
  double (*get)(const CellMetrics&);
  void (*set)(CellMetrics&, double);
};

constexpr MetricField kFields[] = {
    {"gap", [](const CellMetrics& m) { return m.gap_mean; },
     [](CellMetrics& m, double v) { m.gap_mean = v; }},
    {"tau_d_uncorr", [](const CellMetrics& m) { return m.tau_d_uncorr; },
     [](CellMetrics& m, double v) { m.tau_d_uncorr = v; }},
    {"tau_d_bonf", [](const CellMetrics& m) { return m.tau_d_bonf; },
     [](CellMetrics& m, double v) { m.tau_d_bonf = v; }},
    {"welfare_W", [](const CellMetrics& m) { return m.welfare_W; },
     [](CellMetrics& m, double v) { m.welfare_W = v; }},
    {"coverage_C", [](const CellMetrics& m) { return m.coverage_C; },
     [](CellMetrics& m, double v) { m.coverage_C = v; }},
};

// Sample mean and standard error of the mean (0 when all values agree or
// there is a single value).
std::pair<double, double> mean_and_se(const std::vector<double>& values) {
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / count;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se =
      count > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
  return {mean, se};
}

}  // namespace

void SweepConfig::validate() const {
  env.validate();
  if (seeds.empty()) throw ConfigError("config: need at least one seed");
  if (strategies.empty() || policies.empty()) {
    throw ConfigError("config: need at least one strategy and one policy");
  }
  // Dry-run construction surfaces unknown names and bad parameters before
  // any cell executes.
  for (const PolicySpec& pspec : policies) {
    RngStreams streams = make_rng_streams(0, schedule_seed_base(pspec));
    auto policy = make_policy(pspec, env.horizon_T, streams.schedule);
    for (const StrategySpec& sspec : strategies) {
      make_strategy(sspec, env, policy->disclosed_schedule(),
                    streams.strategy);
    }
  }
}

SweepConfig load_config(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("config file not found: " + path);
  }
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }

  SweepConfig config;
  if (const YAML::Node env = root["env"]) {
    if (env["horizon_T"]) config.env.horizon_T = env["horizon_T"].as<int>();
    if (env["m0"]) config.env.m0 = env["m0"].as<double>();
    if (env["sigma"]) config.env.sigma = env["sigma"].as<double>();
    if (env["n_max"]) config.env.n_max = env["n_max"].as<int>();
    if (env["n_min"]) config.env.n_min = env["n_min"].as<int>();
    if (env["z"]) config.env.z = env["z"].as<double>();
    if (env["alpha"]) config.env.alpha = env["alpha"].as<double>();
    config.env.population_N = env["population_N"]
                                  ? env["population_N"].as<int>()
                                  : config.env.n_max;
  }
  if (root["detection_epsilon"]) {
    config.env.epsilon = root["detection_epsilon"].as<double>();
  }
  if (const YAML::Node seeds = root["seeds"]) {
    if (seeds.IsSequence()) {
      for (const auto& s : seeds) config.seeds.push_back(s.as<int>());
    } else {
      const int count = seeds.as<int>();
      if (count < 1) throw ConfigError("config: 'seeds' must be >= 1");
      config.seeds.resize(count);
      std::iota(config.seeds.begin(), config.seeds.end(), 0);
    }
  } else {
    config.seeds.resize(30);
    std::iota(config.seeds.begin(), config.seeds.end(), 0);
  }
  if (root["include_trajectories"]) {
    config.include_trajectories = root["include_trajectories"].as<bool>();
  }
  config.strategies = parse_specs<StrategySpec>(root["strategies"], "strategy");
  config.policies = parse_specs<PolicySpec>(root["policies"], "policy");
  config.validate();
  return config;
}

CellAggregate run_cell(const SweepConfig& config, const StrategySpec& strategy,
                       const PolicySpec& policy) {
  CellAggregate cell;
  cell.strategy = strategy.name;
  cell.policy = policy.name;
  for (int seed : config.seeds) {
    try {
      RngStreams streams = make_rng_streams(seed, schedule_seed_base(policy));
      auto auditor = make_policy(policy, config.env.horizon_T,
                                 streams.schedule);
      auto auditee = make_strategy(strategy, config.env,
                                   auditor->disclosed_schedule(),
                                   streams.strategy);
      Trajectory traj = run_game(config.env, *auditee, *auditor, streams);
      cell.per_seed.push_back(
          compute_cell_metrics(traj, config.env, auditor->sample_floor()));
      if (config.include_trajectories) {
        cell.trajectories.push_back(std::move(traj));
      }
    } catch (const ContractViolation& e) {
      throw ContractViolation("cell (" + strategy.name + ", " + policy.name +
                              ") seed " + std::to_string(seed) + ": " +
                              e.what());
    }
  }

  std::vector<double> values(cell.per_seed.size());
  for (const MetricField& field : kFields) {
    for (std::size_t i = 0; i < cell.per_seed.size(); ++i) {
      values[i] = field.get(cell.per_seed[i]);
    }
    const auto [mean, se] = mean_and_se(values);
    field.set(cell.mean, mean);
    field.set(cell.se, se);
  }
  for (std::size_t i = 0; i < cell.per_seed.size(); ++i) {
    values[i] = cell.per_seed[i].realized_K;
  }
  std::tie(cell.mean_realized_K, cell.se_realized_K) = mean_and_se(values);
  return cell;
}

SweepResult run_sweep(const SweepConfig& config, int jobs) {
  config.validate();
  SweepResult result;
  result.config = config;

  std::vector<std::pair<StrategySpec, PolicySpec>> grid;
  for (const StrategySpec& s : config.strategies) {
    for (const PolicySpec& p : config.policies) grid.emplace_back(s, p);
  }

  result.cells.resize(grid.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      result.cells[i] = run_cell(config, grid[i].first, grid[i].second);
    }
  } else {
    std::vector<std::future<CellAggregate>> futures;
    futures.reserve(grid.size());
    for (const auto& [s, p] : grid) {
      futures.push_back(std::async(std::launch::async,
                                   [&config, s, p] {
                                     return run_cell(config, s, p);
                                   }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      result.cells[i] = futures[i].get();
    }
  }
  return result;
}

std::string to_json(const SweepResult& result) {
  ordered_json root;
  root["artifact"] = "auditsim";
  root["version"] = "0.1.0";

  ordered_json env;
  env["horizon_T"] = result.config.env.horizon_T;
  env["m0"] = result.config.env.m0;
  env["sigma"] = result.config.env.sigma;
  env["n_max"] = result.config.env.n_max;
  env["n_min"] = result.config.env.n_min;
  env["detection_epsilon"] = result.config.env.epsilon;
  env["z"] = result.config.env.z;
  env["population_N"] = result.config.env.population_N;
  env["alpha"] = result.config.env.alpha;
  root["config"]["env"] = env;
  root["config"]["seeds"] = result.config.seeds;

  auto spec_list = [](const auto& specs) {
    ordered_json arr = ordered_json::array();
    for (const auto& spec : specs) {
      ordered_json entry;
      entry["name"] = spec.name;
      entry["params"] = ordered_json(spec.params);
      arr.push_back(entry);
    }
    return arr;
  };
  root["config"]["strategies"] = spec_list(result.config.strategies);
  root["config"]["policies"] = spec_list(result.config.policies);

  auto metrics_obj = [](const CellMetrics& m) {
    ordered_json obj;
    obj["gap"] = m.gap_mean;
    obj["tau_d_uncorr"] = m.tau_d_uncorr;
    obj["tau_d_bonf"] = m.tau_d_bonf;
    obj["welfare_W"] = m.welfare_W;
    obj["coverage_C"] = m.coverage_C;
    return obj;
  };

  root["cells"] = ordered_json::array();
  for (const CellAggregate& cell : result.cells) {
    ordered_json c;
    c["strategy"] = cell.strategy;
    c["policy"] = cell.policy;
    c["mean"] = metrics_obj(cell.mean);
    c["mean"]["realized_K"] = cell.mean_realized_K;
    c["se"] = metrics_obj(cell.se);
    c["se"]["realized_K"] = cell.se_realized_K;
    c["per_seed"] = ordered_json::array();
    for (std::size_t i = 0; i < cell.per_seed.size(); ++i) {
      ordered_json s = metrics_obj(cell.per_seed[i]);
      s["realized_K"] = cell.per_seed[i].realized_K;
      s["seed"] = result.config.seeds[i];
      c["per_seed"].push_back(s);
    }
    if (!cell.trajectories.empty()) {
      c["trajectories"] = ordered_json::array();
      for (const Trajectory& traj : cell.trajectories) {
        ordered_json rows = ordered_json::array();
        for (const RoundRecord& r : traj.rounds) {
          ordered_json row;
          row["t"] = r.t;
          row["true_m"] = r.true_metric;
          row["reported_m"] = r.reported_metric;
          row["n"] = r.n;
          row["audited"] = r.audited;
          rows.push_back(row);
        }
        c["trajectories"].push_back(rows);
      }
    }
    root["cells"].push_back(c);
  }
  return root.dump(2) + "\n";
}

std::string write_sweep(const SweepResult& result,
                        const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string path =
      (std::filesystem::path(out_dir) / "sweep.json").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << to_json(result);
  return path;
}

}  // namespace auditsim
