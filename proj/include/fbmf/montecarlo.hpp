#pragma once

// Monte Carlo estimation of the predictor's accuracy and strategy
// metrics by direct sampling of the joint Gaussian law of the lagged
// returns and the future return. These estimates are the empirical
// oracles the closed forms are validated against.

#include <cstdint>

#include "fbmf/fbm_core.hpp"
#include "fbmf/predictor.hpp"

namespace fbmf {

// A Monte Carlo estimate together with its standard error.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct McHitRatio {
  McEstimate hit_ratio;
  std::uint64_t trials = 0;
};

struct McTernary {
  McEstimate p_plus;
  McEstimate p_minus;
  McEstimate p_zero;
  McEstimate mean_return;  // empirical counterpart of the expected return
  McEstimate mean_loss;    // empirical lower absolute semi-deviation
  std::uint64_t trials = 0;
};

// Empirical probability that the forecast carries the sign of the
// realized return. Deterministic for a fixed seed, independent of the
// thread count (trials are split into fixed chunks with per-chunk
// generators and reduced in chunk order).
McHitRatio mc_hit_ratio(const FbmSpec& spec, const LagStructure& lags,
                        std::uint64_t trials, std::uint64_t seed);

// Empirical ternary-strategy metrics at threshold theta >= 0: the
// position is the forecast's sign when |forecast| >= theta and flat
// otherwise; per-trial strategy return is position times realized
// return. Same determinism guarantees as mc_hit_ratio.
McTernary mc_ternary(const FbmSpec& spec, const LagStructure& lags,
                     double theta, std::uint64_t trials, std::uint64_t seed);

}  // namespace fbmf
