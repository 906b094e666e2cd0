#include "fbmf/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbmf/gaussian_analytics.hpp"
#include "numopt.hpp"

namespace fbmf {

namespace {

constexpr double kSqrt2OverPi = 0.7978845608028654;  // sqrt(2/pi)

void require_traded(const PredictorSolution& solution) {
  if (!(solution.a > 0.0)) {
    throw std::invalid_argument(
        "strategy metrics require a > 0; the forecast is identically zero");
  }
  if (!(solution.b > 0.0)) {
    throw std::invalid_argument("strategy metrics require b > 0");
  }
}

void require_threshold(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("threshold must be finite and >= 0");
  }
}

}  // namespace

double expected_return(const PredictorSolution& solution, double theta) {
  require_traded(solution);
  require_threshold(theta);
  return 2.0 * solution.a * normal_pdf(theta / solution.a);
}

double risk(const PredictorSolution& solution, double theta) {
  require_traded(solution);
  require_threshold(theta);
  const double a = solution.a;
  const double b = solution.b;
  const double sigma_h = std::hypot(a, b);  // sqrt(a^2 + b^2)
  const double mixed = std::sqrt(1.0 / (a * a) + 1.0 / (b * b));
  return -2.0 * a * normal_cdf(-theta / b) * normal_pdf(theta / a) +
         kSqrt2OverPi * sigma_h * normal_cdf(-theta * mixed);
}

StrategyMetrics risk_adjusted_return(const PredictorSolution& solution,
                                     double theta, double lambda) {
  StrategyMetrics m;
  m.theta = theta;
  m.lambda = lambda;
  m.expected_return = expected_return(solution, theta);
  m.risk = risk(solution, theta);
  m.risk_adjusted = m.expected_return - lambda * m.risk;
  return m;
}

ThresholdOptimum optimal_threshold(const PredictorSolution& solution,
                                   double lambda) {
  require_traded(solution);
  const double a = solution.a;

  const auto objective = [&](double theta) {
    return expected_return(solution, theta) -
           lambda * risk(solution, theta);
  };

  // Coarse bracket: the objective decays like a Gaussian in theta/a, so a
  // uniform grid over [0, 10a] always straddles the maximum.
  constexpr int kGridPoints = 65;
  const double hi = 10.0 * a;
  int best = 0;
  double best_val = objective(0.0);
  for (int i = 1; i < kGridPoints; ++i) {
    const double theta = hi * static_cast<double>(i) / (kGridPoints - 1);
    const double val = objective(theta);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }

  double theta_star = 0.0;
  if (best > 0) {
    const double step = hi / (kGridPoints - 1);
    const double lo_b = step * (best - 1);
    const double hi_b = std::min(hi, step * (best + 1));
    theta_star = detail::golden_section_min(
        [&](double t) { return -objective(t); }, lo_b, hi_b, 1e-12 * (1.0 + a));
  }

  // Never report an interior point that fails to beat the unthresholded
  // strategy; this also pins lambda <= 0 to exactly zero.
  if (theta_star > 0.0 && objective(theta_star) <= objective(0.0)) {
    theta_star = 0.0;
  }

  ThresholdOptimum out;
  out.theta_star = theta_star;
  out.metrics = risk_adjusted_return(solution, theta_star, lambda);
  return out;
}

}  // namespace fbmf
