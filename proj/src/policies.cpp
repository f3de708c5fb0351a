#include "auditsim/policies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "auditsim/errors.hpp"

namespace auditsim {
namespace {

class Params {
 public:
  Params(const std::string& owner, std::map<std::string, double> defaults,
         const std::map<std::string, double>& given)
      : values_(std::move(defaults)) {
    for (const auto& [key, value] : given) {
      auto it = values_.find(key);
      if (it == values_.end()) {
        throw ConfigError(owner + ": unknown parameter '" + key + "'");
      }
      it->second = value;
    }
  }
  double get(const std::string& key) const { return values_.at(key); }
  int get_int(const std::string& key) const {
    return static_cast<int>(std::llround(values_.at(key)));
  }

 private:
  std::map<std::string, double> values_;
};

std::vector<int> periodic_cadence(int period, int phase, int horizon_T,
                                  const std::string& owner) {
  if (period < 1 || phase < 0 || phase >= period) {
    throw ConfigError(owner + ": need period >= 1 and 0 <= phase < period");
  }
  std::vector<int> cadence;
  for (int t = 0; t < horizon_T; ++t) {
    if (t % period == phase) cadence.push_back(t);
  }
  if (cadence.empty()) throw ConfigError(owner + ": empty audit cadence");
  return cadence;
}

using Factory = std::function<std::unique_ptr<Auditor>(
    const std::map<std::string, double>&, int, RngStream&)>;

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> reg = {
      {"one_shot",
       [](const auto& given, int T, RngStream&) -> std::unique_ptr<Auditor> {
         Params p("one_shot", {{"t_star", 5}}, given);
         return std::make_unique<OneShotPolicy>(p.get_int("t_star"), T);
       }},
      {"periodic",
       [](const auto& given, int T, RngStream&) -> std::unique_ptr<Auditor> {
         Params p("periodic", {{"k", 3}, {"phase", 2}}, given);
         return std::make_unique<PeriodicPolicy>(p.get_int("k"),
                                                 p.get_int("phase"), T);
       }},
      {"scheduled_random",
       [](const auto& given, int T,
          RngStream& stream) -> std::unique_ptr<Auditor> {
         Params p("scheduled_random", {{"K", 4}, {"seed", 42}}, given);
         return std::make_unique<ScheduledRandomPolicy>(p.get_int("K"), T,
                                                        stream);
       }},
      {"min_sample_floor",
       [](const auto& given, int T, RngStream&) -> std::unique_ptr<Auditor> {
         Params p("min_sample_floor",
                  {{"n_floor", 500}, {"k", 3}, {"phase", 2}}, given);
         return std::make_unique<MinSampleFloorPolicy>(
             p.get_int("n_floor"), p.get_int("k"), p.get_int("phase"), T);
       }},
      {"suspicion_escalation",
       [](const auto& given, int T, RngStream&) -> std::unique_ptr<Auditor> {
         Params p("suspicion_escalation",
                  {{"base_period", 4}, {"threshold", 0.04}}, given);
         return std::make_unique<SuspicionEscalationPolicy>(
             p.get_int("base_period"), p.get("threshold"), T);
       }},
  };
  return reg;
}

// Legacy alias kept so older config files keep working.
std::string canonical_name(const std::string& name) {
  return name == "surprise" ? "scheduled_random" : name;
}

}  // namespace

std::vector<std::string> registered_policies() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

std::unique_ptr<Auditor> make_policy(const PolicySpec& spec, int horizon_T,
                                     RngStream& schedule_stream) {
  if (horizon_T < 2) throw ConfigError("make_policy: horizon_T must be >= 2");
  auto it = registry().find(canonical_name(spec.name));
  if (it == registry().end()) {
    throw ConfigError("unknown policy '" + spec.name + "'");
  }
  return it->second(spec.params, horizon_T, schedule_stream);
}

std::uint64_t schedule_seed_base(const PolicySpec& spec) {
  if (canonical_name(spec.name) == "scheduled_random") {
    Params p("scheduled_random", {{"K", 4}, {"seed", 42}}, spec.params);
    return static_cast<std::uint64_t>(p.get_int("seed"));
  }
  return 42;
}

StaticSchedulePolicy::StaticSchedulePolicy(std::vector<int> schedule)
    : schedule_(std::move(schedule)) {
  std::sort(schedule_.begin(), schedule_.end());
}

bool StaticSchedulePolicy::audit_this_round(int t, int, const AuditHistory&) {
  return std::binary_search(schedule_.begin(), schedule_.end(), t);
}

OneShotPolicy::OneShotPolicy(int t_star, int horizon_T)
    : StaticSchedulePolicy({t_star}) {
  if (t_star < 0 || t_star >= horizon_T) {
    throw ConfigError("one_shot: t_star must be in [0, horizon_T)");
  }
}

PeriodicPolicy::PeriodicPolicy(int period, int phase, int horizon_T)
    : StaticSchedulePolicy(
          periodic_cadence(period, phase, horizon_T, "periodic")) {}

ScheduledRandomPolicy::ScheduledRandomPolicy(int audit_count, int horizon_T,
                                             RngStream& stream)
    : StaticSchedulePolicy([&] {
        if (audit_count < 1 || audit_count > horizon_T) {
          throw ConfigError(
              "scheduled_random: K must be in [1, horizon_T]");
        }
        return stream.sample_without_replacement(horizon_T, audit_count);
      }()) {}

MinSampleFloorPolicy::MinSampleFloorPolicy(int n_floor, int period, int phase,
                                           int horizon_T)
    : StaticSchedulePolicy(
          periodic_cadence(period, phase, horizon_T, "min_sample_floor")),
      n_floor_(n_floor) {
  if (n_floor < 1) throw ConfigError("min_sample_floor: n_floor must be >= 1");
}

SuspicionEscalationPolicy::SuspicionEscalationPolicy(int base_period,
                                                     double threshold,
                                                     int horizon_T)
    : threshold_(threshold) {
  if (base_period < 1) {
    throw ConfigError("suspicion_escalation: base_period must be >= 1");
  }
  for (int t = base_period; t < horizon_T; t += base_period) {
    base_cadence_.push_back(t);
  }
  if (base_cadence_.empty()) {
    throw ConfigError("suspicion_escalation: empty base cadence");
  }
}

bool SuspicionEscalationPolicy::audit_this_round(int t, int,
                                                 const AuditHistory& history) {
  if (!escalated_after_) {
    for (const AuditObservation& obs : history) {
      if (std::abs(obs.reported_metric - obs.verified_metric) > threshold_) {
        escalated_after_ = obs.t;
        break;
      }
    }
  }
  if (escalated_after_ && t > *escalated_after_) return true;
  return std::binary_search(base_cadence_.begin(), base_cadence_.end(), t);
}

}  // namespace auditsim
