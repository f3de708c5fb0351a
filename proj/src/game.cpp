#include "auditsim/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "auditsim/errors.hpp"
#include "auditsim/metrics.hpp"

namespace auditsim {

void GameConfig::validate() const {
  std::ostringstream bad;
  if (horizon_T < 2) bad << "horizon_T must be >= 2; ";
  if (m0 < 0.0 || m0 > 1.0) bad << "m0 must be in [0,1]; ";
  if (sigma < 0.0) bad << "sigma must be >= 0; ";
  if (!(n_min > 0 && n_min < n_max)) bad << "need 0 < n_min < n_max; ";
  if (epsilon < 0.0) bad << "epsilon must be >= 0; ";
  if (z <= 0.0) bad << "z must be > 0; ";
  if (population_N < n_max) bad << "population_N must be >= n_max; ";
  if (alpha <= 0.0 || alpha >= 1.0) bad << "alpha must be in (0,1); ";
  const std::string msg = bad.str();
  if (!msg.empty()) throw ConfigError("invalid GameConfig: " + msg);
}

double step_truth(double prev_m, double noise) {
  return std::clamp(prev_m + noise, 0.0, 1.0);
}

Trajectory run_game(const GameConfig& config, Auditee& auditee,
                    Auditor& auditor, RngStreams& streams) {
  config.validate();
  Trajectory traj;
  traj.rounds.reserve(config.horizon_T);
  AuditHistory history;

  double m = config.m0;
  for (int t = 0; t < config.horizon_T; ++t) {
    if (t > 0) {
      m = step_truth(m, streams.env.gauss(0.0, config.sigma));
    }

    const Report report = auditee.choose_report(t, m, history);
    if (report.n < 1 || report.reported_metric < 0.0 ||
        report.reported_metric > 1.0) {
      std::ostringstream msg;
      msg << "auditee contract violation at t=" << t
          << ": reported=" << report.reported_metric << ", n=" << report.n;
      throw ContractViolation(msg.str());
    }

    const bool audited = auditor.audit_this_round(t, config.horizon_T, history);
    if (audited) {
      const double gap = std::abs(report.reported_metric - m);
      bool flagged = gap > detection_threshold(report.reported_metric,
                                               report.n, config.epsilon,
                                               config.z);
      if (const auto floor = auditor.sample_floor();
          floor && report.n < *floor) {
        flagged = true;
      }
      history.push_back(
          AuditObservation{t, report.reported_metric, m, report.n, flagged});
      traj.realized_audit_set.push_back(t);
    }
    traj.rounds.push_back(
        RoundRecord{t, m, report.reported_metric, report.n, audited});
  }
  return traj;
}

}  // namespace auditsim
