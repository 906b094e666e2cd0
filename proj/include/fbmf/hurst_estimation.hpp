#pragma once

// Rolling-window estimation of the Hurst exponent (and the matching
// volatility scale) from the variance ratio of increments at two
// durations.

#include <cstddef>
#include <vector>

namespace fbmf {

// Window length and the two increment durations, all in sampling steps.
struct EstimatorConfig {
  int window_T = 504;
  int tau1 = 1;
  int tau2 = 2;

  void validate() const;  // throws std::invalid_argument on bad fields
};

// Joint estimate over one trailing window. `hurst` is the raw variance-
// ratio estimate and is deliberately NOT clamped to (0,1); callers that
// feed it into model formulas must clamp themselves. `sigma` is the
// per-step volatility scale implied by the tau1 increments.
struct HurstEstimate {
  double hurst = 0.0;
  double sigma = 0.0;
  bool out_of_range = false;  // true when hurst falls outside (0,1)
};

// Estimate from the window [t_index - window_T, t_index] (inclusive,
// zero-based). Throws std::out_of_range when the window does not fit and
// std::runtime_error when an increment sum vanishes (constant series).
HurstEstimate estimate_window(const std::vector<double>& series,
                              const EstimatorConfig& cfg,
                              std::size_t t_index);

// Convenience accessor returning only the Hurst estimate.
double estimate_hurst(const std::vector<double>& series,
                      const EstimatorConfig& cfg, std::size_t t_index);

struct RollingPoint {
  std::size_t index = 0;
  HurstEstimate estimate;
};

// One estimate per eligible index (window_T .. len-1). Per-window
// failures are reported as gaps (the index is simply absent), never as
// exceptions. A series shorter than window_T + 1 yields an empty result.
std::vector<RollingPoint> rolling_hurst(const std::vector<double>& series,
                                        const EstimatorConfig& cfg);

// Incremental evaluator behind rolling_hurst: prefix sums of squared
// increments make each window O(1). Exposed for pipelines that walk a
// long series step by step.
class RollingHurst {
 public:
  RollingHurst(const std::vector<double>& series, EstimatorConfig cfg);

  std::size_t first_index() const;       // smallest eligible t_index
  std::size_t series_length() const { return length_; }
  HurstEstimate at(std::size_t t_index) const;  // throws like estimate_window

 private:
  EstimatorConfig cfg_;
  std::size_t length_ = 0;
  std::vector<double> cum1_;  // cumulative squared tau1-increments
  std::vector<double> cum2_;  // cumulative squared tau2-increments
};

}  // namespace fbmf
