#pragma once

#include <optional>

#include "auditsim/game.hpp"

namespace auditsim {

// Per-trajectory metric bundle. tau_d == horizon_T encodes never-detected.
struct CellMetrics {
  double gap_mean = 0.0;
  double tau_d_uncorr = 0.0;
  double tau_d_bonf = 0.0;
  double welfare_W = 0.0;
  double coverage_C = 0.0;
  int realized_K = 0;
};

// Noise-aware acceptance band half-width: epsilon + z * sqrt(p(1-p)/n)
// with p the clipped reported metric.
double detection_threshold(double reported_p, int n, double epsilon, double z);

// Standard-normal quantile, accurate to well below 1e-9.
double normal_quantile(double p);

// Family-wise corrected quantile Phi^-1(1 - alpha/(2K)). Requires K >= 1.
double bonferroni_z(int realized_K, double alpha);

// First audited round whose absolute gap exceeds the threshold at
// z_effective, or whose sample size violates the floor (floor detection is
// z-independent); horizon_T if never.
int time_to_detection(const Trajectory& trajectory,
                      std::optional<int> sample_floor, double epsilon,
                      double z_effective, int horizon_T);

// Mean signed (reported - true) over audited rounds; 0 on an empty set.
double gaming_gap(const Trajectory& trajectory);

// Sum over unaudited rounds of n_t * |reported - true|.
double welfare_loss(const Trajectory& trajectory);

// Sum over all rounds of (N - n_t) * |reported - true|.
double coverage_loss(const Trajectory& trajectory, int population_N);

// Full bundle: both tau_d variants (Bonferroni at realized K), harms, gap.
CellMetrics compute_cell_metrics(const Trajectory& trajectory,
                                 const GameConfig& config,
                                 std::optional<int> sample_floor);

}  // namespace auditsim
