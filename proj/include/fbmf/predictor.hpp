#pragma once

#include <vector>

#include "fbmf/fbm_core.hpp"

namespace fbmf {

// Forecast horizon h together with the lag set delta_0 < ... < delta_n
// (n >= 1, delta_0 >= 0). The i-th past return spans
// [t - delta_i, t - delta_{i-1}].
struct LagStructure {
  double horizon_h;
  std::vector<double> lags;
  LagStructure(double horizon_h_, std::vector<double> lags_);
  int n() const { return static_cast<int>(lags.size()) - 1; }
};

// MSE-optimal linear predictor of the future increment from the lagged
// increments. `weights` multiply the adjacent past returns; the scalars
// a = sqrt(cov_rs^T solve(cov_ss) cov_rs) and b = sqrt(sigma^2 h^{2H} - a^2)
// parameterize the joint law of (forecast, realized return) and drive
// every downstream accuracy/strategy formula. mse = b^2.
struct PredictorSolution {
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
  double mse = 0.0;
  double condition_number = 1.0;  // of the past-return covariance
  bool ill_conditioned = false;   // condition_number > 1e12
};

// Solves the normal equations via a Cholesky factorization. A Hurst
// exponent within 1e-10 of 1/2 snaps to the exact martingale solution
// (zero weights, a = 0) since the downstream formulas are singular
// there. Throws std::runtime_error on a singular covariance
// (duplicated/degenerate lags).
PredictorSolution solve_predictor(const FbmSpec& spec,
                                  const LagStructure& lags);

// Closed form of the single weight for n = 1:
// 0.5 [ ((h/delta_1) + 1)^{2H} - (h/delta_1)^{2H} - 1 ].
double beta1_closed_form(const FbmSpec& spec, double h, double delta1);

// Weighted sum of the observed adjacent returns, ordered
// (R_{t-delta_1, t-delta_0}, ..., R_{t-delta_n, t-delta_{n-1}}).
double forecast(const PredictorSolution& solution,
                const std::vector<double>& observed_returns);

// Converts the adjacent-return weights to weights on anchored returns
// (R_{t-delta_1, t}, ..., R_{t-delta_n, t}); the two representations
// produce identical forecasts on any path (telescoping identity).
// Requires delta_0 = 0, where the identity holds.
std::vector<double> adjacent_to_anchored_weights(
    const PredictorSolution& solution, const LagStructure& lags);

}  // namespace fbmf
