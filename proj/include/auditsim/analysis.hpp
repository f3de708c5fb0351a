#pragma once

#include <string>
#include <vector>

#include "auditsim/game.hpp"
#include "auditsim/policies.hpp"

namespace auditsim {

// Drift-magnitude interval that escapes the full-sample threshold check at
// n_max yet fits inside the band at n_min: (lower, upper].
struct CoverRegime {
  double lower = 0.0;  // exclusive: threshold at n_max
  double upper = 0.0;  // inclusive: threshold at n_min
  bool empty = false;

  bool contains(double delta) const {
    return !empty && delta > lower && delta <= upper;
  }
};

CoverRegime cover_regime(double p, int n_min, int n_max, double epsilon,
                         double z);

// Mean of the minimum of K rounds drawn uniformly without replacement from
// {0..T-1}: (T+1)/(K+1) - 1.
double expected_min_audited_round(int horizon_T, int audit_count);

// 1 - (1 - alpha)^K, the family-wise false-positive bound for K
// independent per-round tests.
double fwer_bound(double alpha, int audit_count);

// E[max of K standard normals], by quadrature (absolute error < 1e-6).
double expected_max_std_normal(int K);

// sigma_pick * E[max of K standard normals].
double cherry_pick_expected_gap(int K, double sigma_pick);

// --- empirical experiments (figure/table data) ---

struct FprRow {
  std::string policy;
  double mean_realized_K = 0.0;
  double per_round_uncorr = 0.0;
  double per_round_bonf = 0.0;
  double fwer_uncorr = 0.0;
  double fwer_bonf = 0.0;
};

struct FprReport {
  int seeds = 0;
  std::vector<FprRow> rows;
};

// False-positive-rate validation: honest-with-sampling-noise auditee at
// n_max against each policy, firings counted under both z variants.
FprReport fpr_experiment(const GameConfig& config,
                         const std::vector<PolicySpec>& policies, int seeds);

struct RegimeMapCell {
  int n_min = 0;
  double delta = 0.0;
  double mean_tau_d = 0.0;
  double regime_lower = 0.0;  // analytic overlay at this n_min
  double regime_upper = 0.0;
  bool in_regime = false;
};

// Mean uncorrected time-to-detection over a (n_min, delta) grid for a
// fixed-attrition auditee (always n_min, always +delta) under the periodic
// policy, with the analytic cover-regime overlay per cell.
std::vector<RegimeMapCell> regime_map(const std::vector<int>& n_min_grid,
                                      const std::vector<double>& delta_grid,
                                      const GameConfig& config, int seeds);

struct SensitivityPoint {
  std::string curve;  // "tpr" or "fpr"
  double param = 0.0;
  double rate = 0.0;
};

// Operating curves for the two adaptive baselines.
//   min_sample_floor: TPR on fixed-n_min attrition as n_floor varies;
//     FPR on an honest auditee operating at sample size n_t (floor fixed).
//   suspicion_escalation: TPR on drift as delta varies; FPR on exact-honest.
std::vector<SensitivityPoint> sensitivity_curves(const std::string& policy,
                                                 const GameConfig& config,
                                                 int seeds);

}  // namespace auditsim
