#include "auditsim/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "auditsim/errors.hpp"

namespace auditsim {
namespace {

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

// Resolved parameter view: registered defaults overlaid with the spec's
// explicit values. Rejects parameters the strategy does not define.
class Params {
 public:
  Params(const std::string& owner,
         std::map<std::string, double> defaults,
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

using Factory = std::function<std::unique_ptr<Auditee>(
    const std::map<std::string, double>&, const GameConfig&,
    const std::vector<int>&, RngStream&)>;

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> reg = {
      {"honest",
       [](const auto&, const GameConfig& cfg, const auto&, RngStream&) {
         return std::make_unique<HonestStrategy>(cfg.n_max);
       }},
      {"honest_noisy",
       [](const auto&, const GameConfig& cfg, const auto&,
          RngStream& stream) {
         return std::make_unique<HonestNoisyStrategy>(cfg.n_max, stream);
       }},
      {"delay",
       [](const auto& given, const GameConfig& cfg, const auto&, RngStream&) {
         Params p("delay", {{"k", 2}}, given);
         const int k = p.get_int("k");
         if (k < 1) throw ConfigError("delay: k must be >= 1");
         return std::make_unique<DelayStrategy>(k, cfg.n_max);
       }},
      {"drift",
       [](const auto& given, const GameConfig& cfg, const auto&, RngStream&) {
         Params p("drift", {{"delta", 0.05}}, given);
         return std::make_unique<DriftStrategy>(p.get("delta"), cfg.n_max);
       }},
      {"cherry_pick",
       [](const auto& given, const GameConfig& cfg, const auto&,
          RngStream& stream) {
         Params p("cherry_pick", {{"K", 5}, {"sigma_pick", 0.04}}, given);
         const int K = p.get_int("K");
         if (K < 1) throw ConfigError("cherry_pick: K must be >= 1");
         return std::make_unique<CherryPickStrategy>(K, p.get("sigma_pick"),
                                                     cfg.n_max, stream);
       }},
      {"attrition",
       [](const auto& given, const GameConfig& cfg, const auto&, RngStream&) {
         Params p("attrition", {{"tau", 0.40}, {"delta_cover", 0.05}}, given);
         return std::make_unique<AttritionStrategy>(
             p.get("tau"), p.get("delta_cover"), cfg.n_min, cfg.n_max);
       }},
      {"off_audit_drift",
       [](const auto& given, const GameConfig& cfg,
          const std::vector<int>& disclosed, RngStream&) {
         Params p("off_audit_drift", {{"delta", 0.05}}, given);
         return std::make_unique<OffAuditDriftStrategy>(p.get("delta"),
                                                        cfg.n_max, disclosed);
       }},
  };
  return reg;
}

}  // namespace

std::vector<std::string> registered_strategies() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

std::unique_ptr<Auditee> make_strategy(
    const StrategySpec& spec, const GameConfig& config,
    const std::vector<int>& disclosed_schedule, RngStream& strategy_stream) {
  auto it = registry().find(spec.name);
  if (it == registry().end()) {
    throw ConfigError("unknown strategy '" + spec.name + "'");
  }
  return it->second(spec.params, config, disclosed_schedule, strategy_stream);
}

Report HonestNoisyStrategy::choose_report(int, double true_metric,
                                          const AuditHistory&) {
  const int k = stream_.binomial(n_, true_metric);
  return {static_cast<double>(k) / n_, n_};
}

Report DelayStrategy::choose_report(int t, double true_metric,
                                    const AuditHistory&) {
  const double reported = t >= k_ ? buffer_[t - k_] : true_metric;
  buffer_.push_back(true_metric);
  return {reported, n_};
}

Report DriftStrategy::choose_report(int, double true_metric,
                                    const AuditHistory&) {
  return {clip01(true_metric + delta_), n_};
}

Report CherryPickStrategy::choose_report(int, double true_metric,
                                         const AuditHistory&) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < candidates_; ++i) {
    best = std::max(best, stream_.gauss(true_metric, sigma_pick_));
  }
  return {clip01(best), n_};
}

Report AttritionStrategy::choose_report(int, double true_metric,
                                        const AuditHistory&) {
  if (true_metric < tau_) {
    return {clip01(true_metric + delta_cover_), n_min_};
  }
  return {true_metric, n_max_};
}

OffAuditDriftStrategy::OffAuditDriftStrategy(double delta, int n,
                                             std::vector<int> disclosed)
    : delta_(delta), n_(n), disclosed_(std::move(disclosed)) {
  std::sort(disclosed_.begin(), disclosed_.end());
}

Report OffAuditDriftStrategy::choose_report(int t, double true_metric,
                                            const AuditHistory&) {
  if (std::binary_search(disclosed_.begin(), disclosed_.end(), t)) {
    return {true_metric, n_};
  }
  return {clip01(true_metric + delta_), n_};
}

}  // namespace auditsim
