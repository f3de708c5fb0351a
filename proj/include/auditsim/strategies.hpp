#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "auditsim/game.hpp"

namespace auditsim {

// Registry key plus parameter map. Missing parameters take the registered
// defaults; unknown names or parameters are rejected.
struct StrategySpec {
  std::string name;
  std::map<std::string, double> params;
};

// Names of all registered strategies.
std::vector<std::string> registered_strategies();

// Builds a fresh auditee instance for one game. disclosed_schedule is the
// audit schedule the auditor discloses under the public-schedule regime;
// strategy_stream backs the stochastic strategies and must outlive the
// returned instance.
std::unique_ptr<Auditee> make_strategy(const StrategySpec& spec,
                                       const GameConfig& config,
                                       const std::vector<int>& disclosed_schedule,
                                       RngStream& strategy_stream);

// --- concrete strategies (exposed for direct use in tests/analysis) ---

// Reports the truth at a fixed sample size.
class HonestStrategy final : public Auditee {
 public:
  explicit HonestStrategy(int n) : n_(n) {}
  Report choose_report(int, double true_metric, const AuditHistory&) override {
    return {true_metric, n_};
  }

 private:
  int n_;
};

// Reports k/n with k ~ Binomial(n, m_t): honest up to sampling noise.
class HonestNoisyStrategy final : public Auditee {
 public:
  HonestNoisyStrategy(int n, RngStream& stream) : n_(n), stream_(stream) {}
  Report choose_report(int t, double true_metric,
                       const AuditHistory& history) override;

 private:
  int n_;
  RngStream& stream_;
};

// Reports the truth from k rounds prior; current truth during warm-up.
class DelayStrategy final : public Auditee {
 public:
  DelayStrategy(int k, int n) : k_(k), n_(n) {}
  Report choose_report(int t, double true_metric,
                       const AuditHistory& history) override;

 private:
  int k_;
  int n_;
  std::vector<double> buffer_;
};

// Adds a fixed bias delta to the truth, clipped to [0,1].
class DriftStrategy final : public Auditee {
 public:
  DriftStrategy(double delta, int n) : delta_(delta), n_(n) {}
  Report choose_report(int t, double true_metric,
                       const AuditHistory& history) override;

 private:
  double delta_;
  int n_;
};

// Samples K candidates from N(m_t, sigma_pick^2) and reports their maximum
// (candidates unclipped; only the report is clipped).
class CherryPickStrategy final : public Auditee {
 public:
  CherryPickStrategy(int candidates, double sigma_pick, int n,
                     RngStream& stream)
      : candidates_(candidates), sigma_pick_(sigma_pick), n_(n),
        stream_(stream) {}
  Report choose_report(int t, double true_metric,
                       const AuditHistory& history) override;

 private:
  int candidates_;
  double sigma_pick_;
  int n_;
  RngStream& stream_;
};

// Below the threshold tau (strict), shrinks the verified sample to n_min
// and drifts the report by delta_cover; otherwise honest at n_max.
class AttritionStrategy final : public Auditee {
 public:
  AttritionStrategy(double tau, double delta_cover, int n_min, int n_max)
      : tau_(tau), delta_cover_(delta_cover), n_min_(n_min), n_max_(n_max) {}
  Report choose_report(int t, double true_metric,
                       const AuditHistory& history) override;

 private:
  double tau_;
  double delta_cover_;
  int n_min_;
  int n_max_;
};

// Honest exactly on the disclosed audit rounds; drifts by delta elsewhere.
class OffAuditDriftStrategy final : public Auditee {
 public:
  OffAuditDriftStrategy(double delta, int n, std::vector<int> disclosed);
  Report choose_report(int t, double true_metric,
                       const AuditHistory& history) override;

 private:
  double delta_;
  int n_;
  std::vector<int> disclosed_;  // sorted
};

}  // namespace auditsim
