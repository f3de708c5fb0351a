#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "auditsim/analysis.hpp"
#include "auditsim/errors.hpp"
#include "auditsim/runner.hpp"

namespace {

using auditsim::GameConfig;
using ordered_json = nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw auditsim::ConfigError("cannot write " + path.string());
  out << body;
}

std::vector<auditsim::PolicySpec> default_policies() {
  return {{"one_shot", {}},
          {"periodic", {}},
          {"scheduled_random", {}},
          {"min_sample_floor", {}},
          {"suspicion_escalation", {}}};
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int seed_override, double epsilon_override, bool has_epsilon,
            bool trajectories, int jobs) {
  auto config = auditsim::load_config(config_path);
  if (seed_override > 0) {
    config.seeds.resize(seed_override);
    std::iota(config.seeds.begin(), config.seeds.end(), 0);
  }
  if (has_epsilon) config.env.epsilon = epsilon_override;
  if (trajectories) config.include_trajectories = true;

  const auto start = std::chrono::steady_clock::now();
  const auto result = auditsim::run_sweep(config, jobs);
  const auto path = auditsim::write_sweep(result, out_dir);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::cout << "wrote " << path << ": " << result.cells.size() << " cells, "
            << config.seeds.size() << " seeds, " << elapsed << " s\n";
  return 0;
}

int cmd_fpr(int seeds, const std::string& out_dir) {
  GameConfig config;  // default environment; auditee reports at n_max
  const auto start = std::chrono::steady_clock::now();
  const auto report =
      auditsim::fpr_experiment(config, default_policies(), seeds);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "policy,mean_K,per_round_uncorr,per_round_bonf,fwer_uncorr,"
         "fwer_bonf\n";
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    csv << row.policy << ',' << row.mean_realized_K << ','
        << row.per_round_uncorr << ',' << row.per_round_bonf << ','
        << row.fwer_uncorr << ',' << row.fwer_bonf << '\n';
    ordered_json r;
    r["policy"] = row.policy;
    r["mean_K"] = row.mean_realized_K;
    r["per_round_uncorr"] = row.per_round_uncorr;
    r["per_round_bonf"] = row.per_round_bonf;
    r["fwer_uncorr"] = row.fwer_uncorr;
    r["fwer_bonf"] = row.fwer_bonf;
    rows.push_back(r);
  }
  ordered_json root;
  root["seeds"] = report.seeds;
  root["rows"] = rows;
  write_file(std::filesystem::path(out_dir) / "fpr.csv", csv.str());
  write_file(std::filesystem::path(out_dir) / "fpr.json",
             root.dump(2) + "\n");
  std::cout << "wrote fpr.csv/fpr.json: " << report.rows.size()
            << " policies, " << seeds << " seeds, " << elapsed << " s\n";
  return 0;
}

int cmd_regime_map(const std::string& out_dir, int seeds, double m0) {
  GameConfig config;
  config.m0 = m0;
  std::vector<int> n_min_grid;
  for (int n = 100; n <= 1000; n += 100) n_min_grid.push_back(n);
  std::vector<double> delta_grid;
  for (int i = 0; i <= 10; ++i) delta_grid.push_back(0.01 * i);

  const auto start = std::chrono::steady_clock::now();
  const auto cells = auditsim::regime_map(n_min_grid, delta_grid, config,
                                          seeds);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "n_min,delta,mean_tau_d,regime_lower,regime_upper,in_regime\n";
  for (const auto& cell : cells) {
    csv << cell.n_min << ',' << cell.delta << ',' << cell.mean_tau_d << ','
        << cell.regime_lower << ',' << cell.regime_upper << ','
        << (cell.in_regime ? 1 : 0) << '\n';
  }
  write_file(std::filesystem::path(out_dir) / "regime.csv", csv.str());
  std::cout << "wrote regime.csv: " << cells.size() << " cells, " << seeds
            << " seeds, " << elapsed << " s\n";
  return 0;
}

int cmd_sensitivity(const std::string& policy, const std::string& out_dir,
                    int seeds) {
  GameConfig config;
  if (policy == "min_sample_floor") config.m0 = 0.30;

  const auto start = std::chrono::steady_clock::now();
  const auto points = auditsim::sensitivity_curves(policy, config, seeds);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "curve,param,rate\n";
  for (const auto& point : points) {
    csv << point.curve << ',' << point.param << ',' << point.rate << '\n';
  }
  write_file(std::filesystem::path(out_dir) / "curves.csv", csv.str());
  std::cout << "wrote curves.csv: " << points.size() << " points, " << seeds
            << " seeds, " << elapsed << " s\n";
  return 0;
}

int cmd_oracle(double p, int n_min, int n_max, double epsilon, double z,
               int K, double alpha, int horizon_T) {
  const auto regime = auditsim::cover_regime(p, n_min, n_max, epsilon, z);
  std::cout << "cover regime at p=" << p << ": (" << regime.lower << ", "
            << regime.upper << "]" << (regime.empty ? " (empty)" : "")
            << '\n';
  std::cout << "bonferroni z (K=" << K << ", alpha=" << alpha
            << "): " << auditsim::bonferroni_z(K, alpha) << '\n';
  std::cout << "expected min audited round (T=" << horizon_T << ", K=" << K
            << "): " << auditsim::expected_min_audited_round(horizon_T, K)
            << '\n';
  std::cout << "FWER bound (alpha=" << alpha << ", K=" << K
            << "): " << auditsim::fwer_bound(alpha, K) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg compliance-audit game simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "results", policy;
  int seeds = 0, jobs = 1;
  double epsilon = 0.0;
  bool trajectories = false;

  auto* run = app.add_subcommand("run", "run a strategy x policy sweep");
  run->add_option("--config", config_path, "YAML sweep config")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seeds", seeds, "override: use seeds 0..N-1");
  auto* eps_opt =
      run->add_option("--epsilon", epsilon, "override detection tolerance");
  run->add_flag("--trajectories", trajectories,
                "include per-round trajectories in sweep.json");
  run->add_option("--jobs", jobs, "parallel cell workers");

  auto* fpr = app.add_subcommand("fpr",
                                 "false-positive-rate validation table");
  int fpr_seeds = 200;
  fpr->add_option("--seeds", fpr_seeds, "number of seeds");
  fpr->add_option("--out", out_dir, "output directory");

  auto* regime = app.add_subcommand("regime-map",
                                    "time-to-detection over (n_min, delta)");
  int regime_seeds = 30;
  double regime_m0 = 0.30;
  regime->add_option("--seeds", regime_seeds, "seeds per cell");
  regime->add_option("--m0", regime_m0, "baseline metric");
  regime->add_option("--out", out_dir, "output directory");

  auto* sens = app.add_subcommand("sensitivity",
                                  "adaptive-baseline operating curves");
  int sens_seeds = 30;
  sens->add_option("--policy", policy, "min_sample_floor|suspicion_escalation")
      ->required();
  sens->add_option("--seeds", sens_seeds, "seeds per point");
  sens->add_option("--out", out_dir, "output directory");

  auto* oracle = app.add_subcommand("oracle", "print the analytic quantities");
  double p = 0.5, oz = 1.96, oalpha = 0.05, oeps = 0.0;
  int n_min = 100, n_max = 1000, K = 4, horizon_T = 12;
  oracle->add_option("--p", p, "reported metric");
  oracle->add_option("--n-min", n_min, "lower sample size");
  oracle->add_option("--n-max", n_max, "upper sample size");
  oracle->add_option("--epsilon", oeps, "regulatory tolerance");
  oracle->add_option("--z", oz, "detection quantile");
  oracle->add_option("--K", K, "audit count");
  oracle->add_option("--alpha", oalpha, "family-wise level");
  oracle->add_option("--T", horizon_T, "horizon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_dir, seeds, epsilon,
                     eps_opt->count() > 0, trajectories, jobs);
    }
    if (fpr->parsed()) return cmd_fpr(fpr_seeds, out_dir);
    if (regime->parsed()) {
      return cmd_regime_map(out_dir, regime_seeds, regime_m0);
    }
    if (sens->parsed()) return cmd_sensitivity(policy, out_dir, sens_seeds);
    if (oracle->parsed()) {
      return cmd_oracle(p, n_min, n_max, oeps, oz, K, oalpha, horizon_T);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
