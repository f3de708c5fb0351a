#include "auditsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auditsim {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Acklam's rational approximation to the probit function, good to ~1e-9
// before refinement.
double probit_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double detection_threshold(double reported_p, int n, double epsilon,
                           double z) {
  const double p = std::clamp(reported_p, 0.0, 1.0);
  const double se = std::sqrt(p * (1.0 - p) / std::max(n, 1));
  return epsilon + z * se;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must be in (0,1)");
  }
  double x = probit_estimate(p);
  // One Halley step against the erfc-based CDF pushes the estimate to
  // near machine precision.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double bonferroni_z(int realized_K, double alpha) {
  if (realized_K < 1) {
    throw std::domain_error("bonferroni_z: K must be >= 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("bonferroni_z: alpha must be in (0,1)");
  }
  return normal_quantile(1.0 - alpha / (2.0 * realized_K));
}

int time_to_detection(const Trajectory& trajectory,
                      std::optional<int> sample_floor, double epsilon,
                      double z_effective, int horizon_T) {
  for (const RoundRecord& r : trajectory.rounds) {
    if (!r.audited) continue;
    if (sample_floor && r.n < *sample_floor) return r.t;
    const double gap = std::abs(r.reported_metric - r.true_metric);
    if (gap > detection_threshold(r.reported_metric, r.n, epsilon,
                                  z_effective)) {
      return r.t;
    }
  }
  return horizon_T;
}

double gaming_gap(const Trajectory& trajectory) {
  double sum = 0.0;
  int count = 0;
  for (const RoundRecord& r : trajectory.rounds) {
    if (!r.audited) continue;
    sum += r.reported_metric - r.true_metric;
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

double welfare_loss(const Trajectory& trajectory) {
  double sum = 0.0;
  for (const RoundRecord& r : trajectory.rounds) {
    if (r.audited) continue;
    sum += r.n * std::abs(r.reported_metric - r.true_metric);
  }
  return sum;
}

double coverage_loss(const Trajectory& trajectory, int population_N) {
  double sum = 0.0;
  for (const RoundRecord& r : trajectory.rounds) {
    sum += (population_N - r.n) * std::abs(r.reported_metric - r.true_metric);
  }
  return sum;
}

CellMetrics compute_cell_metrics(const Trajectory& trajectory,
                                 const GameConfig& config,
                                 std::optional<int> sample_floor) {
  CellMetrics m;
  m.realized_K = static_cast<int>(trajectory.realized_audit_set.size());
  m.gap_mean = gaming_gap(trajectory);
  m.tau_d_uncorr = time_to_detection(trajectory, sample_floor, config.epsilon,
                                     config.z, config.horizon_T);
  // An empty audit set has nothing to correct over; treat as never-detected.
  m.tau_d_bonf =
      m.realized_K == 0
          ? config.horizon_T
          : time_to_detection(trajectory, sample_floor, config.epsilon,
                              bonferroni_z(m.realized_K, config.alpha),
                              config.horizon_T);
  m.welfare_W = welfare_loss(trajectory);
  m.coverage_C = coverage_loss(trajectory, config.population_N);
  return m;
}

}  // namespace auditsim
