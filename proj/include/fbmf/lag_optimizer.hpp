#pragma once

// Numerical search for the lag set that maximizes the theoretical hit
// ratio of the predictor at a given horizon.

#include <vector>

#include "fbmf/fbm_core.hpp"

namespace fbmf {

// Result of the hit-ratio maximization over lag sets with delta_0 = 0.
struct LagOptimum {
  std::vector<double> lags;  // delta_1* .. delta_n*, absolute time units
  double hit_ratio = 0.5;
  int n = 0;
};

// Hit ratio of the predictor built on the given lags (delta_0 = 0 is
// implied and must not be included). Pure objective wrapper.
double hit_ratio_of_lags(const FbmSpec& spec, double horizon,
                         const std::vector<double>& lags);

// Maximizes hit_ratio_of_lags over strictly increasing positive lag sets
// of size n. The search runs in log-gap coordinates at unit horizon
// (the optimum scales linearly in the horizon) from several geometric-
// ladder starts, refined by simplex descent and a coordinate polish.
// Requires 1 <= n <= 8 and a Hurst index away from 1/2 (the objective is
// identically 1/2 there).
LagOptimum optimize_lags(const FbmSpec& spec, double horizon, int n);

}  // namespace fbmf
