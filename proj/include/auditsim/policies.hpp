#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "auditsim/game.hpp"

namespace auditsim {

struct PolicySpec {
  std::string name;
  std::map<std::string, double> params;
};

std::vector<std::string> registered_policies();

// Builds a fresh auditor for one game, materializing its committed schedule
// up front. schedule_stream is consumed only by schedule-drawing policies.
std::unique_ptr<Auditor> make_policy(const PolicySpec& spec, int horizon_T,
                                     RngStream& schedule_stream);

// Base seed for the policy's schedule stream (the scheduled_random 'seed'
// parameter; its registered default for everything else).
std::uint64_t schedule_seed_base(const PolicySpec& spec);

// --- concrete policies ---

// Static policy: audits exactly its committed schedule, ignoring history.
class StaticSchedulePolicy : public Auditor {
 public:
  explicit StaticSchedulePolicy(std::vector<int> schedule);
  bool audit_this_round(int t, int horizon_T,
                        const AuditHistory& history) override;
  const std::vector<int>& committed_schedule() const override {
    return schedule_;
  }

 private:
  std::vector<int> schedule_;  // sorted
};

class OneShotPolicy final : public StaticSchedulePolicy {
 public:
  OneShotPolicy(int t_star, int horizon_T);
};

class PeriodicPolicy final : public StaticSchedulePolicy {
 public:
  PeriodicPolicy(int period, int phase, int horizon_T);
};

class ScheduledRandomPolicy final : public StaticSchedulePolicy {
 public:
  ScheduledRandomPolicy(int audit_count, int horizon_T, RngStream& stream);
};

// Periodic cadence plus a z-independent sample-size floor on audited rounds.
class MinSampleFloorPolicy final : public StaticSchedulePolicy {
 public:
  MinSampleFloorPolicy(int n_floor, int period, int phase, int horizon_T);
  std::optional<int> sample_floor() const override { return n_floor_; }

 private:
  int n_floor_;
};

// Audits on a base cadence; once an observed absolute gap exceeds the
// suspicion threshold (strict), audits every round after that observation.
// Discloses only the base cadence.
class SuspicionEscalationPolicy final : public Auditor {
 public:
  SuspicionEscalationPolicy(int base_period, double threshold, int horizon_T);
  bool audit_this_round(int t, int horizon_T,
                        const AuditHistory& history) override;
  const std::vector<int>& committed_schedule() const override {
    return base_cadence_;
  }
  std::vector<int> disclosed_schedule() const override { return base_cadence_; }

 private:
  std::vector<int> base_cadence_;
  double threshold_;
  // Escalation latch: round after which every round is audited.
  std::optional<int> escalated_after_;
};

}  // namespace auditsim
