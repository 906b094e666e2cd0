#pragma once

#include "fbmf/predictor.hpp"

namespace fbmf {

// Per-period statistics of the thresholded long/short/flat strategy.
struct StrategyMetrics {
  double expected_return = 0.0;  // mean strategy return per period
  double risk = 0.0;             // lower absolute semi-deviation
  double risk_adjusted = 0.0;    // expected_return - lambda * risk
  double lambda = 0.0;
  double theta = 0.0;
};

struct ThresholdOptimum {
  double theta_star = 0.0;
  StrategyMetrics metrics;
};

// Mean strategy return: 2 a g(theta/a). Requires a > 0.
double expected_return(const PredictorSolution& solution, double theta);

// Lower absolute semi-deviation (mean loss):
// -2 a N(-theta/b) g(theta/a)
//   + sqrt(2/pi) sigma h^H N(-theta sqrt(1/a^2 + 1/b^2)).
double risk(const PredictorSolution& solution, double theta);

// Packages return, risk and the lambda-penalized combination.
// Negative lambda (risk-seeking) is accepted.
StrategyMetrics risk_adjusted_return(const PredictorSolution& solution,
                                     double theta, double lambda);

// argmax over theta >= 0 of the risk-adjusted return: coarse 64-point
// bracket on [0, 10a] followed by a golden-section refinement. Returns
// exactly 0 whenever no interior point beats theta = 0 (in particular
// for lambda = 0 and for any lambda < 0).
ThresholdOptimum optimal_threshold(const PredictorSolution& solution,
                                   double lambda);

}  // namespace fbmf
