#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "auditsim/rng.hpp"

namespace auditsim {

// Environment, detection, and population parameters for one play of the
// T-round audit game.
struct GameConfig {
  int horizon_T = 12;
  double m0 = 0.5;
  double sigma = 0.02;
  int n_max = 1000;
  int n_min = 100;
  double epsilon = 0.0;
  double z = 1.96;
  int population_N = 1000;
  double alpha = 0.05;

  // Throws ConfigError on any violated bound.
  void validate() const;
};

struct RoundRecord {
  int t = 0;
  double true_metric = 0.0;
  double reported_metric = 0.0;
  int n = 0;
  bool audited = false;
};

// History element shared by both parties: what the auditor saw on an
// audited round. Appended in round order, audited rounds only.
struct AuditObservation {
  int t = 0;
  double reported_metric = 0.0;
  double verified_metric = 0.0;
  int n = 0;
  bool flagged = false;
};

using AuditHistory = std::vector<AuditObservation>;

struct Trajectory {
  std::vector<RoundRecord> rounds;
  std::vector<int> realized_audit_set;  // sorted
};

struct Report {
  double reported_metric = 0.0;
  int n = 0;
};

// Auditee interface. Stateful implementations (delay buffer, committed
// schedule) are confined to a single game.
class Auditee {
 public:
  virtual ~Auditee() = default;
  virtual Report choose_report(int t, double true_metric,
                               const AuditHistory& history) = 0;
};

// Auditor interface. The committed schedule is materialized before round 0;
// disclosed_schedule() is what the auditee is told under the public-schedule
// regime (history-conditioned policies disclose only their base cadence).
class Auditor {
 public:
  virtual ~Auditor() = default;
  virtual bool audit_this_round(int t, int horizon_T,
                                const AuditHistory& history) = 0;
  virtual const std::vector<int>& committed_schedule() const = 0;
  virtual std::vector<int> disclosed_schedule() const {
    return committed_schedule();
  }
  // Sample-size floor for policies that flag low-n rounds independently of
  // the Wald rule; nullopt for everyone else.
  virtual std::optional<int> sample_floor() const { return std::nullopt; }
};

// clip(prev_m + noise, 0, 1).
double step_truth(double prev_m, double noise);

// Plays one full game. Round 0 uses m0 directly; truth noise applies from
// the transition into round 1 onward. Detection never alters auditee
// behavior within the game. Throws ContractViolation if the auditee breaks
// its report contract.
Trajectory run_game(const GameConfig& config, Auditee& auditee,
                    Auditor& auditor, RngStreams& streams);

}  // namespace auditsim
