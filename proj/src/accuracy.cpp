#include "fbmf/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fbmf {

namespace {

void require_traded_solution(const PredictorSolution& solution,
                             const char* who) {
  if (!(solution.a > 0.0))
    throw std::invalid_argument(std::string(who) +
                                ": requires a > 0 (undefined at H = 1/2)");
}

}  // namespace

double hit_ratio(const PredictorSolution& solution) {
  if (solution.a <= 0.0) return 0.5;
  return 0.5 + std::atan2(solution.a, solution.b) / M_PI;
}

double conditional_hit_ratio(const PredictorSolution& solution,
                             const std::vector<double>& observed_returns) {
  const double f = forecast(solution, observed_returns);
  if (!(solution.b > 0.0)) return 1.0;  // deterministic limit
  return normal_cdf(std::abs(f) / solution.b);
}

TernaryProbabilities ternary_probabilities_taylor(
    const PredictorSolution& solution, double theta) {
  require_traded_solution(solution, "ternary_probabilities_taylor");
  if (!(theta >= 0.0))
    throw std::invalid_argument(
        "ternary_probabilities_taylor: theta must be >= 0");
  const double a = solution.a;
  const double b = solution.b;
  const double t = theta / a;
  const double untraded = normal_cdf(-t);  // (p+ + p-)/2, exact
  double correction = std::atan(a / b) / M_PI -
                      theta * theta / (2.0 * M_PI * a * b) +
                      (1.0 / (a * b * b * b) + 3.0 / (a * a * a * b)) *
                          theta * theta * theta * theta / (24.0 * M_PI);
  // Outside the expansion's validity the raw polynomial can leave
  // [0,1]; clamping keeps the triple a probability vector while leaving
  // the valid region untouched.
  correction = std::clamp(correction, -untraded, untraded);
  TernaryProbabilities p;
  p.theta = theta;
  p.p_plus = untraded + correction;
  p.p_minus = untraded - correction;
  p.p_zero = 2.0 * normal_cdf(t) - 1.0;
  return p;
}

TernaryProbabilities ternary_probabilities_exact(
    const PredictorSolution& solution, double theta,
    const QuadratureConfig& cfg) {
  require_traded_solution(solution, "ternary_probabilities_exact");
  if (!(theta >= 0.0))
    throw std::invalid_argument(
        "ternary_probabilities_exact: theta must be >= 0");
  const double a = solution.a;
  const double b = solution.b;
  const double t = theta / a;
  const double alpha = a / b;
  TernaryProbabilities p;
  p.theta = theta;
  // Conditioning on the forecast amplitude u = forecast/a >= t, the
  // realized sign matches with probability N((a/b)u); splitting the
  // complement the same way gives the mirrored integrand.
  p.p_plus = 2.0 * lemma_a2_exact(alpha, t, cfg);
  p.p_minus = 2.0 * lemma_a2_exact(-alpha, t, cfg);
  p.p_zero = 2.0 * normal_cdf(t) - 1.0;
  return p;
}

}  // namespace fbmf
