// End-to-end acceptance suite. Each numbered block validates one release
// criterion and prints exactly one [PASS]/[FAIL] line; the process exits
// nonzero if any block fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "auditsim/analysis.hpp"
#include "auditsim/metrics.hpp"
#include "auditsim/policies.hpp"
#include "auditsim/runner.hpp"
#include "auditsim/strategies.hpp"

using namespace auditsim;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)) {}

  void check(bool ok, const std::string& detail) {
    ++checks_;
    if (!ok) {
      failed_.push_back(detail);
    }
  }

  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: got %.6g, want %.6g +- %.3g",
                  what.c_str(), got, want, tol);
    check(std::abs(got - want) <= tol + 1e-12, buf);
  }

  int finish() const {
    if (failed_.empty()) {
      std::printf("[PASS] %2d: %s (%d checks)\n", number_, title_.c_str(),
                  checks_);
    } else {
      std::printf("[FAIL] %2d: %s (%zu of %d checks failed)\n", number_,
                  title_.c_str(), failed_.size(), checks_);
      for (const std::string& f : failed_) {
        std::printf("         - %s\n", f.c_str());
      }
      ++g_failures;
    }
    return checks_;
  }

 private:
  int number_;
  std::string title_;
  int checks_ = 0;
  std::vector<std::string> failed_;
};

std::vector<int> seed_range(int count) {
  std::vector<int> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = i;
  return seeds;
}

SweepConfig base_sweep(double m0, int seeds) {
  SweepConfig config;
  config.env.m0 = m0;
  config.seeds = seed_range(seeds);
  return config;
}

CellAggregate cell(const SweepConfig& config, const std::string& strategy,
                   const std::string& policy) {
  return run_cell(config, {strategy, {}}, {policy, {}});
}

const std::vector<std::string> kPolicies = {
    "one_shot", "periodic", "scheduled_random", "min_sample_floor",
    "suspicion_escalation"};

void mean_se(const std::vector<double>& xs, double& mean, double& se) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  se = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1.0) / xs.size()) : 0.0;
}

}  // namespace

int main() {
  const auto t_start = std::chrono::steady_clock::now();

  {
    Criterion c(1, "detection thresholds at the reference sample sizes");
    c.near(detection_threshold(0.5, 1000, 0.0, 1.96), 0.0310, 0.0005,
           "threshold(0.5, n=1000)");
    c.near(detection_threshold(0.5, 100, 0.0, 1.96), 0.0980, 0.0005,
           "threshold(0.5, n=100)");
    c.finish();
  }

  SweepConfig sweep_mid = base_sweep(0.5, 30);
  sweep_mid.include_trajectories = true;

  {
    Criterion c(2, "constant-drift row: gap, detection round, welfare");
    const double w_want[] = {550, 400, 400, 400, 200};
    const int tau_want[] = {5, 2, -1, 2, 4};  // -1: first scheduled round
    for (std::size_t i = 0; i < kPolicies.size(); ++i) {
      CellAggregate agg = cell(sweep_mid, "drift", kPolicies[i]);
      for (std::size_t s = 0; s < agg.per_seed.size(); ++s) {
        const CellMetrics& m = agg.per_seed[s];
        c.check(std::abs(m.gap_mean - 0.05) < 1e-9,
                kPolicies[i] + ": gap != 0.050 (seed " + std::to_string(s) +
                    ", got " + std::to_string(m.gap_mean) + ")");
        const int want = tau_want[i] >= 0
                             ? tau_want[i]
                             : agg.trajectories[s].realized_audit_set.front();
        c.check(m.tau_d_uncorr == want && m.tau_d_bonf == want,
                kPolicies[i] + ": tau_d != " + std::to_string(want) +
                    " (seed " + std::to_string(s) + ")");
        c.check(std::abs(m.welfare_W - w_want[i]) < 1e-6,
                kPolicies[i] + ": W != " + std::to_string(w_want[i]) +
                    " (seed " + std::to_string(s) + ", got " +
                    std::to_string(m.welfare_W) + ")");
      }
    }
    c.finish();
  }

  {
    Criterion c(3, "audit-aware drift row: clean audits, never detected");
    const double w_want[] = {550, 400, 400, 400, 500};
    for (std::size_t i = 0; i < kPolicies.size(); ++i) {
      CellAggregate agg = cell(sweep_mid, "off_audit_drift", kPolicies[i]);
      for (const CellMetrics& m : agg.per_seed) {
        c.check(m.gap_mean == 0.0, kPolicies[i] + ": gap != 0");
        c.check(m.tau_d_uncorr == 12 && m.tau_d_bonf == 12,
                kPolicies[i] + ": detected despite clean audits");
        c.check(std::abs(m.welfare_W - w_want[i]) < 1e-6,
                kPolicies[i] + ": W != " + std::to_string(w_want[i]) +
                    " (got " + std::to_string(m.welfare_W) + ")");
      }
    }
    c.finish();
  }

  {
    Criterion c(4, "honest row collapses to zero harm under every policy");
    for (const std::string& policy : kPolicies) {
      CellAggregate agg = cell(sweep_mid, "honest", policy);
      for (const CellMetrics& m : agg.per_seed) {
        c.check(m.gap_mean == 0.0 && m.welfare_W == 0.0 &&
                    m.coverage_C == 0.0 && m.tau_d_uncorr == 12 &&
                    m.tau_d_bonf == 12,
                policy + ": honest row not clean");
      }
    }
    c.finish();
  }

  SweepConfig sweep_low = base_sweep(0.30, 30);

  {
    Criterion c(5, "attrition row at m0=0.30: evasion, floor catch, harm");
    const double w_want[] = {54, 39, 40, 39, 20};
    const std::string order[] = {"one_shot", "periodic", "scheduled_random",
                                 "min_sample_floor", "suspicion_escalation"};
    for (std::size_t i = 0; i < 5; ++i) {
      CellAggregate agg = cell(sweep_low, "attrition", order[i]);
      std::vector<double> taus_u, taus_b;
      for (const CellMetrics& m : agg.per_seed) {
        taus_u.push_back(m.tau_d_uncorr);
        taus_b.push_back(m.tau_d_bonf);
      }
      if (order[i] == "min_sample_floor") {
        for (std::size_t s = 0; s < agg.per_seed.size(); ++s) {
          c.check(taus_u[s] == 2 && taus_b[s] == 2,
                  "min_sample_floor: floor did not fire at round 2 (seed " +
                      std::to_string(s) + ")");
        }
      } else {
        for (std::size_t s = 0; s < agg.per_seed.size(); ++s) {
          c.check(taus_u[s] == 12 && taus_b[s] == 12,
                  order[i] + ": attrition was detected (seed " +
                      std::to_string(s) + ")");
        }
      }
      c.near(agg.mean.welfare_W, w_want[i], 2.0, order[i] + ": mean W");
      c.near(agg.mean.coverage_C, 534.0, 8.0, order[i] + ": mean C");
    }
    c.finish();
  }

  {
    Criterion c(6, "cover-regime interval oracle");
    CoverRegime r = cover_regime(0.5, 100, 1000, 0.0, 1.96);
    c.near(r.lower, 0.031, 0.0005, "lower edge");
    c.near(r.upper, 0.098, 0.0005, "upper edge");
    c.check(r.contains(0.05), "0.05 not inside the regime");
    CoverRegime tight = cover_regime(0.5, 500, 1000, 0.0, 1.96);
    c.near(tight.upper, 0.044, 0.001, "upper edge at n_min=500");
    c.check(!tight.contains(0.05), "0.05 still inside at n_min=500");
    c.finish();
  }

  {
    Criterion c(7, "multiple-comparison identities");
    c.near(bonferroni_z(1, 0.05), 1.960, 0.001, "z(K=1)");
    c.near(bonferroni_z(4, 0.05), 2.498, 0.002, "z(K=4)");
    c.near(fwer_bound(0.05, 4), 0.185, 0.0005, "family-wise bound, K=4");
    c.finish();
  }

  {
    Criterion c(8, "selective reporting vs cadence: gap band and latency tax");
    CellAggregate agg = cell(sweep_mid, "cherry_pick", "periodic");
    std::vector<double> gaps, tu, tb;
    for (const CellMetrics& m : agg.per_seed) {
      gaps.push_back(m.gap_mean);
      tu.push_back(m.tau_d_uncorr);
      tb.push_back(m.tau_d_bonf);
    }
    double g, g_se, u, u_se, b, b_se;
    mean_se(gaps, g, g_se);
    mean_se(tu, u, u_se);
    mean_se(tb, b, b_se);
    c.check(g >= 0.036 && g <= 0.054,
            "mean gap " + std::to_string(g) + " outside [0.036, 0.054]");
    c.check(u >= 2.0 && u <= 3.5,
            "mean uncorrected detection round " + std::to_string(u) +
                " outside [2.0, 3.5]");
    c.check(b >= 3.2 && b <= 5.2,
            "mean corrected detection round " + std::to_string(b) +
                " outside [3.2, 5.2]");
    c.check(b - u >= 1.0, "correction latency tax " + std::to_string(b - u) +
                              " below 1.0 rounds");
    c.finish();
  }

  {
    Criterion c(9, "random schedules front-load detection of constant drift");
    CellAggregate agg = cell(sweep_mid, "drift", "scheduled_random");
    std::vector<double> taus;
    for (const CellMetrics& m : agg.per_seed) taus.push_back(m.tau_d_uncorr);
    double mean, se;
    mean_se(taus, mean, se);
    const double oracle = expected_min_audited_round(12, 4);
    c.near(mean, oracle, 3.0 * se, "mean detection round vs order-statistic");
    c.finish();
  }

  {
    Criterion c(10, "stale reporting: near-zero gap, mid-range welfare loss");
    CellAggregate agg = cell(sweep_mid, "delay", "periodic");
    c.check(std::abs(agg.mean.gap_mean) <= 0.01,
            "|mean gap| " + std::to_string(std::abs(agg.mean.gap_mean)) +
                " above 0.01");
    c.check(agg.mean.welfare_W >= 100.0 && agg.mean.welfare_W <= 230.0,
            "mean W " + std::to_string(agg.mean.welfare_W) +
                " outside [100, 230]");
    c.finish();
  }

  {
    Criterion c(11, "false-positive calibration over 200 honest trials");
    GameConfig config;
    std::vector<PolicySpec> specs;
    for (const std::string& p : kPolicies) specs.push_back({p, {}});
    FprReport report = fpr_experiment(config, specs, 200);
    const double bound = fwer_bound(0.05, 4);
    const double mc_se = std::sqrt(bound * (1.0 - bound) / 200.0);
    for (const FprRow& row : report.rows) {
      c.near(row.per_round_uncorr, 0.05, 0.02,
             row.policy + ": per-round uncorrected rate");
      if (row.policy == "periodic" || row.policy == "scheduled_random" ||
          row.policy == "min_sample_floor") {
        c.check(row.fwer_uncorr >= 0.12 && row.fwer_uncorr <= 0.24,
                row.policy + ": uncorrected family-wise rate " +
                    std::to_string(row.fwer_uncorr) + " outside [0.12, 0.24]");
        c.check(row.fwer_uncorr <= bound + 3.0 * mc_se,
                row.policy + ": uncorrected family-wise rate above bound");
        c.near(row.fwer_bonf, 0.05, 0.03,
               row.policy + ": corrected family-wise rate");
      }
      if (row.policy == "one_shot") {
        c.near(row.fwer_bonf, 0.05, 0.03,
               "one_shot: corrected family-wise rate");
      }
    }
    c.finish();
  }

  {
    Criterion c(12, "selective-reporting gap matches the order-statistic oracle");
    CellAggregate agg = cell(sweep_mid, "cherry_pick", "periodic");
    std::vector<double> gaps;
    for (const CellMetrics& m : agg.per_seed) gaps.push_back(m.gap_mean);
    double mean, se;
    mean_se(gaps, mean, se);
    c.near(mean, cherry_pick_expected_gap(5, 0.04), 3.0 * se,
           "empirical mean gap vs quadrature oracle");
    c.finish();
  }

  {
    Criterion c(13, "invariant property suite");
    int named = 0;
    auto prop = [&](bool ok, const char* label) {
      ++named;
      c.check(ok, std::string("property: ") + label);
    };

    // determinism
    SweepConfig small = base_sweep(0.5, 4);
    small.strategies = {{"honest_noisy", {}}, {"cherry_pick", {}}};
    small.policies = {{"periodic", {}}, {"scheduled_random", {}}};
    const std::string once = to_json(run_sweep(small, 1));
    prop(once == to_json(run_sweep(small, 1)), "rerun is byte-identical");
    prop(once == to_json(run_sweep(small, 4)),
         "parallel run is byte-identical to serial");

    // threshold monotonicity
    bool mono = true;
    for (double p : {0.3, 0.5}) {
      for (int n = 100; n < 2000; n += 100) {
        mono = mono && detection_threshold(p, n + 100, 0.0, 1.96) <
                           detection_threshold(p, n, 0.0, 1.96);
      }
    }
    prop(mono, "threshold strictly decreases in n (p=0.3)");
    prop(detection_threshold(0.5, 400, 0.0, 1.96) >
             detection_threshold(0.5, 1600, 0.0, 1.96),
         "threshold strictly decreases in n (p=0.5)");

    // escalation latch
    {
      RngStream stream(0);
      auto policy = make_policy({"suspicion_escalation", {}}, 12, stream);
      AuditHistory history = {{4, 0.55, 0.50, 1000, true}};
      bool latched = true;
      for (int t = 5; t < 12; ++t) {
        latched = latched && policy->audit_this_round(t, 12, history);
      }
      prop(latched, "escalation latches for every later round");

      RngStream stream2(0);
      auto calm = make_policy({"suspicion_escalation", {}}, 12, stream2);
      AuditHistory boundary = {{4, 0.0, 0.04, 1000, true}};
      prop(!calm->audit_this_round(5, 12, boundary),
           "escalation ignores a gap exactly at the threshold");
    }

    // sample-floor strictness
    {
      Trajectory at_floor;
      at_floor.rounds.push_back({0, 0.5, 0.5, 500, true});
      at_floor.realized_audit_set = {0};
      prop(time_to_detection(at_floor, 500, 0.0, 1.96, 12) == 12,
           "n equal to the floor is compliant");
      Trajectory below;
      below.rounds.push_back({0, 0.5, 0.5, 499, true});
      below.realized_audit_set = {0};
      prop(time_to_detection(below, 500, 0.0, 1.96, 12) == 0,
           "n one below the floor flags immediately");
    }

    // strategy report contracts
    {
      GameConfig config;
      bool in_range = true, valid_n = true;
      for (const std::string& name : registered_strategies()) {
        RngStream stream(5);
        auto s = make_strategy({name, {}}, config, {2, 5, 8, 11}, stream);
        for (int t = 0; t < 12; ++t) {
          Report r = s->choose_report(t, 0.5, {});
          in_range = in_range && r.reported_metric >= 0.0 &&
                     r.reported_metric <= 1.0;
          valid_n = valid_n && (r.n == config.n_min || r.n == config.n_max);
        }
      }
      prop(in_range, "every strategy reports inside [0,1]");
      prop(valid_n, "every strategy uses a declared sample size");

      RngStream stream(7), replay(7);
      CherryPickStrategy picker(5, 0.04, 1000, stream);
      picker.choose_report(0, 0.5, {});
      for (int i = 0; i < 5; ++i) replay.gauss(0.5, 0.04);
      prop(stream == replay, "selective reporting draws exactly K candidates");

      RngStream untouched_a(9), untouched_b(9);
      auto honest = make_strategy({"drift", {}}, config, {}, untouched_a);
      for (int t = 0; t < 12; ++t) honest->choose_report(t, 0.5, {});
      prop(untouched_a == untouched_b,
           "deterministic strategies never touch their stream");
    }

    // realized audit-count accounting
    {
      const int k_want[] = {1, 4, 4, 4, 8};
      for (std::size_t i = 0; i < kPolicies.size(); ++i) {
        CellAggregate agg = cell(base_sweep(0.5, 4), "drift", kPolicies[i]);
        bool all = true;
        for (const CellMetrics& m : agg.per_seed) {
          all = all && m.realized_K == k_want[i];
        }
        prop(all, ("realized audit count under " + kPolicies[i]).c_str());
      }
    }

    // harm accounting
    {
      bool w_ok = true, c_ok = true;
      for (const std::string& strategy : registered_strategies()) {
        CellAggregate agg = cell(base_sweep(0.30, 4), strategy, "periodic");
        for (const CellMetrics& m : agg.per_seed) {
          w_ok = w_ok && m.welfare_W >= 0.0;
          c_ok = c_ok && m.coverage_C >= 0.0;
        }
      }
      prop(w_ok, "welfare loss is never negative");
      prop(c_ok, "coverage loss is never negative");

      CellAggregate honest = cell(base_sweep(0.30, 4), "honest", "periodic");
      prop(honest.mean.welfare_W == 0.0 && honest.mean.coverage_C == 0.0,
           "honest play incurs zero harm");

      CellAggregate attr = cell(base_sweep(0.30, 30), "attrition", "periodic");
      CellAggregate drift = cell(base_sweep(0.30, 30), "drift", "periodic");
      prop(attr.mean.welfare_W < drift.mean.welfare_W,
           "attrition moves harm off the welfare surface");
      prop(attr.mean.coverage_C > 0.0,
           "attrition creates coverage harm");
      prop(drift.mean.coverage_C == 0.0,
           "full-sample drift creates no coverage harm");
    }

    c.check(named >= 21, "fewer than 21 named property checks");
    c.finish();
    std::printf("        property checks: %d\n", named);
  }

  {
    Criterion c(14, "runtime budget");
    const int jobs = std::max(1u, std::thread::hardware_concurrency());

    auto t0 = std::chrono::steady_clock::now();
    SweepConfig one = base_sweep(0.5, 1);
    run_cell(one, {"cherry_pick", {}}, {"periodic", {}});
    const double cell_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    c.check(cell_s < 1.0, "single cell, single seed took " +
                              std::to_string(cell_s) + " s (budget 1 s)");

    t0 = std::chrono::steady_clock::now();
    const std::string config_dir = std::string(AUDITSIM_SOURCE_DIR) + "/configs";
    run_sweep(load_config(config_dir + "/default.yaml"), jobs);
    run_sweep(load_config(config_dir + "/attrition.yaml"), jobs);
    const double sweep_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    c.check(sweep_s < 60.0, "double-config sweep took " +
                                std::to_string(sweep_s) + " s (budget 60 s)");
    c.finish();
  }

  const double total_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  std::printf("%s: %d criterion failure(s), %.1f s total\n",
              g_failures == 0 ? "OK" : "FAILED", g_failures, total_s);
  return g_failures == 0 ? 0 : 1;
}
