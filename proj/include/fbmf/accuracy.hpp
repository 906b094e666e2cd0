#pragma once

#include <vector>

#include "fbmf/gaussian_analytics.hpp"
#include "fbmf/predictor.hpp"

namespace fbmf {

// Probabilities of good / bad / discarded sign forecast under a
// threshold theta: the forecast is traded only when |forecast| >= theta.
struct TernaryProbabilities {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_zero = 0.0;
  double theta = 0.0;
};

// Probability that the forecast sign matches the realized sign:
// 1/2 + arctan(a/b)/pi. Returns exactly 1/2 when a = 0 (the snapped
// martingale solution).
double hit_ratio(const PredictorSolution& solution);

// Probability of a correct sign given the observed past returns y:
// N(|forecast(y)| / b).
double conditional_hit_ratio(const PredictorSolution& solution,
                             const std::vector<double>& observed_returns);

// Degree-4 expansion of p+/p- around theta = 0 (p_zero is exact).
// Documented validity: |theta/a| <= 0.5; the correction term is clamped
// so the probabilities stay in [0,1] and sum to one at any theta.
// Throws std::invalid_argument when a = 0 (theta/a undefined at H=1/2).
TernaryProbabilities ternary_probabilities_taylor(
    const PredictorSolution& solution, double theta);

// Exact evaluation by adaptive quadrature, valid for every theta >= 0:
// p+- = 2 * integral of N(+-(a/b)u) g(u) du over [theta/a, inf).
TernaryProbabilities ternary_probabilities_exact(
    const PredictorSolution& solution, double theta,
    const QuadratureConfig& cfg = {});

}  // namespace fbmf
