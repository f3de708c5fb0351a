#include "auditsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "auditsim/metrics.hpp"
#include "auditsim/strategies.hpp"

namespace auditsim {
namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Always reports clip(m + delta) on a fixed sample size; the synthetic
// auditee behind the regime map and the floor sensitivity curve.
class FixedAttritionAuditee final : public Auditee {
 public:
  FixedAttritionAuditee(double delta, int n) : delta_(delta), n_(n) {}
  Report choose_report(int, double true_metric, const AuditHistory&) override {
    return {std::clamp(true_metric + delta_, 0.0, 1.0), n_};
  }

 private:
  double delta_;
  int n_;
};

}  // namespace

CoverRegime cover_regime(double p, int n_min, int n_max, double epsilon,
                         double z) {
  CoverRegime r;
  r.lower = detection_threshold(p, n_max, epsilon, z);
  r.upper = detection_threshold(p, n_min, epsilon, z);
  r.empty = (p <= 0.0 || p >= 1.0) || r.lower >= r.upper;
  return r;
}

double expected_min_audited_round(int horizon_T, int audit_count) {
  if (audit_count < 1 || audit_count > horizon_T) {
    throw std::domain_error("expected_min_audited_round: need 1 <= K <= T");
  }
  return static_cast<double>(horizon_T + 1) / (audit_count + 1) - 1.0;
}

double fwer_bound(double alpha, int audit_count) {
  if (audit_count < 0) {
    throw std::domain_error("fwer_bound: K must be >= 0");
  }
  return 1.0 - std::pow(1.0 - alpha, audit_count);
}

double expected_max_std_normal(int K) {
  if (K < 1) throw std::domain_error("expected_max_std_normal: K must be >= 1");
  if (K == 1) return 0.0;
  // E[max] = K * integral z phi(z) Phi(z)^(K-1) dz; composite Simpson on
  // [-10, 10] (tails beyond are < 1e-20 for any practical K).
  const double lo = -10.0, hi = 10.0;
  const int intervals = 20000;  // even
  const double h = (hi - lo) / intervals;
  auto f = [K](double z) {
    return z * normal_pdf(z) * std::pow(normal_cdf(z), K - 1);
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) {
    sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return K * sum * h / 3.0;
}

double cherry_pick_expected_gap(int K, double sigma_pick) {
  return sigma_pick * expected_max_std_normal(K);
}

FprReport fpr_experiment(const GameConfig& config,
                         const std::vector<PolicySpec>& policies, int seeds) {
  FprReport report;
  report.seeds = seeds;
  for (const PolicySpec& pspec : policies) {
    FprRow row;
    row.policy = pspec.name;
    long total_audited = 0;
    long fires_uncorr = 0, fires_bonf = 0;
    int seeds_fired_uncorr = 0, seeds_fired_bonf = 0;
    double sum_K = 0.0;
    for (int seed = 0; seed < seeds; ++seed) {
      RngStreams streams = make_rng_streams(seed, schedule_seed_base(pspec));
      auto policy = make_policy(pspec, config.horizon_T, streams.schedule);
      HonestNoisyStrategy auditee(config.n_max, streams.strategy);
      Trajectory traj = run_game(config, auditee, *policy, streams);

      const int realized_K = static_cast<int>(traj.realized_audit_set.size());
      sum_K += realized_K;
      if (realized_K == 0) continue;
      const double z_bonf = bonferroni_z(realized_K, config.alpha);
      bool any_uncorr = false, any_bonf = false;
      for (const RoundRecord& r : traj.rounds) {
        if (!r.audited) continue;
        ++total_audited;
        const double gap = std::abs(r.reported_metric - r.true_metric);
        const auto floor = policy->sample_floor();
        const bool floor_fire = floor && r.n < *floor;
        if (floor_fire || gap > detection_threshold(r.reported_metric, r.n,
                                                    config.epsilon,
                                                    config.z)) {
          ++fires_uncorr;
          any_uncorr = true;
        }
        if (floor_fire || gap > detection_threshold(r.reported_metric, r.n,
                                                    config.epsilon, z_bonf)) {
          ++fires_bonf;
          any_bonf = true;
        }
      }
      seeds_fired_uncorr += any_uncorr;
      seeds_fired_bonf += any_bonf;
    }
    row.mean_realized_K = sum_K / seeds;
    row.per_round_uncorr =
        total_audited == 0 ? 0.0 : static_cast<double>(fires_uncorr) /
                                       total_audited;
    row.per_round_bonf = total_audited == 0
                             ? 0.0
                             : static_cast<double>(fires_bonf) / total_audited;
    row.fwer_uncorr = static_cast<double>(seeds_fired_uncorr) / seeds;
    row.fwer_bonf = static_cast<double>(seeds_fired_bonf) / seeds;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<RegimeMapCell> regime_map(const std::vector<int>& n_min_grid,
                                      const std::vector<double>& delta_grid,
                                      const GameConfig& config, int seeds) {
  if (n_min_grid.empty() || delta_grid.empty()) {
    throw std::domain_error("regime_map: grids must be non-empty");
  }
  const PolicySpec periodic{"periodic", {}};
  std::vector<RegimeMapCell> cells;
  for (int n_min : n_min_grid) {
    const CoverRegime regime =
        cover_regime(config.m0, n_min, config.n_max, config.epsilon, config.z);
    for (double delta : delta_grid) {
      RegimeMapCell cell;
      cell.n_min = n_min;
      cell.delta = delta;
      cell.regime_lower = regime.lower;
      cell.regime_upper = regime.upper;
      cell.in_regime = regime.contains(delta);
      double sum_tau = 0.0;
      for (int seed = 0; seed < seeds; ++seed) {
        RngStreams streams = make_rng_streams(seed, 42);
        auto policy = make_policy(periodic, config.horizon_T, streams.schedule);
        FixedAttritionAuditee auditee(delta, n_min);
        Trajectory traj = run_game(config, auditee, *policy, streams);
        sum_tau += time_to_detection(traj, std::nullopt, config.epsilon,
                                     config.z, config.horizon_T);
      }
      cell.mean_tau_d = sum_tau / seeds;
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<SensitivityPoint> sensitivity_curves(const std::string& policy,
                                                 const GameConfig& config,
                                                 int seeds) {
  std::vector<SensitivityPoint> points;
  auto detect_rate = [&](const PolicySpec& pspec, auto make_auditee) {
    int detected = 0;
    for (int seed = 0; seed < seeds; ++seed) {
      RngStreams streams = make_rng_streams(seed, schedule_seed_base(pspec));
      auto auditor = make_policy(pspec, config.horizon_T, streams.schedule);
      auto auditee = make_auditee(streams);
      Trajectory traj = run_game(config, *auditee, *auditor, streams);
      const int tau =
          time_to_detection(traj, auditor->sample_floor(), config.epsilon,
                            config.z, config.horizon_T);
      detected += tau < config.horizon_T;
    }
    return static_cast<double>(detected) / seeds;
  };

  if (policy == "min_sample_floor") {
    for (int n_floor = 100; n_floor <= 1000; n_floor += 50) {
      PolicySpec pspec{"min_sample_floor",
                       {{"n_floor", static_cast<double>(n_floor)}}};
      const double tpr = detect_rate(pspec, [&](RngStreams&) {
        return std::make_unique<FixedAttritionAuditee>(0.05, config.n_min);
      });
      points.push_back({"tpr_vs_n_floor", static_cast<double>(n_floor), tpr});
    }
    for (int n_t = 100; n_t <= 1000; n_t += 50) {
      PolicySpec pspec{"min_sample_floor", {}};  // n_floor = 500
      const double fpr = detect_rate(pspec, [&](RngStreams&) {
        return std::make_unique<HonestStrategy>(n_t);
      });
      points.push_back({"fpr_vs_n_t", static_cast<double>(n_t), fpr});
    }
    return points;
  }
  if (policy == "suspicion_escalation") {
    PolicySpec pspec{"suspicion_escalation", {}};
    for (int i = 0; i <= 20; ++i) {
      const double delta = 0.005 * i;
      const double tpr = detect_rate(pspec, [&](RngStreams&) {
        return std::make_unique<DriftStrategy>(delta, config.n_max);
      });
      points.push_back({"tpr_vs_delta", delta, tpr});
      const double fpr = detect_rate(pspec, [&](RngStreams&) {
        return std::make_unique<HonestStrategy>(config.n_max);
      });
      points.push_back({"fpr_vs_delta", delta, fpr});
    }
    return points;
  }
  throw std::domain_error(
      "sensitivity_curves: policy must be min_sample_floor or "
      "suspicion_escalation");
}

}  // namespace auditsim
