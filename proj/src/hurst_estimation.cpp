#include "fbmf/hurst_estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace fbmf {

namespace {

// Shared core: turn the two window sums of squared increments into the
// joint (hurst, sigma) estimate. The Hurst formula is the log of a
// bias-adjusted variance ratio,
//   H = [log((T - tau2) * sum1) - log((T - tau1) * sum2)]
//         / (2 (log tau1 - log tau2)),
// written so that swapping tau1 and tau2 negates numerator and
// denominator exactly and therefore returns the identical value.
HurstEstimate from_sums(double sum1, double sum2, const EstimatorConfig& cfg) {
  const double T = static_cast<double>(cfg.window_T);
  if (!(sum1 > 0.0) || !(sum2 > 0.0)) {
    throw std::runtime_error(
        "hurst estimation failed: window increments are constant");
  }
  const double num = std::log((T - cfg.tau2) * sum1);
  const double den = std::log((T - cfg.tau1) * sum2);
  const double log_ratio =
      std::log(static_cast<double>(cfg.tau1)) -
      std::log(static_cast<double>(cfg.tau2));

  HurstEstimate out;
  out.hurst = (num - den) / (2.0 * log_ratio);
  out.out_of_range = !(out.hurst > 0.0 && out.hurst < 1.0);

  // Volatility scale from the tau1 increments: their variance under the
  // model is sigma^2 * tau1^(2H), so invert the scaling at the estimated
  // exponent. Uses the plain mean square (count = T - tau1 + 1 terms).
  const double mean_sq = sum1 / (T - cfg.tau1 + 1.0);
  out.sigma = std::sqrt(
      mean_sq / std::pow(static_cast<double>(cfg.tau1), 2.0 * out.hurst));
  return out;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (window_T < 8) {
    throw std::invalid_argument("estimator window must hold at least 8 steps");
  }
  if (tau1 < 1 || tau2 < 1) {
    throw std::invalid_argument("increment durations must be >= 1 step");
  }
  if (tau1 == tau2) {
    throw std::invalid_argument("increment durations must differ");
  }
  if (4 * tau1 >= window_T || 4 * tau2 >= window_T) {
    throw std::invalid_argument(
        "increment durations must be below a quarter of the window");
  }
}

HurstEstimate estimate_window(const std::vector<double>& series,
                              const EstimatorConfig& cfg,
                              std::size_t t_index) {
  cfg.validate();
  const std::size_t T = static_cast<std::size_t>(cfg.window_T);
  if (t_index < T || t_index >= series.size()) {
    throw std::out_of_range("estimation window does not fit in the series");
  }
  double sum1 = 0.0, sum2 = 0.0;
  for (int i = 0; i <= cfg.window_T - cfg.tau1; ++i) {
    const double d = series[t_index - i] - series[t_index - i - cfg.tau1];
    sum1 += d * d;
  }
  for (int i = 0; i <= cfg.window_T - cfg.tau2; ++i) {
    const double d = series[t_index - i] - series[t_index - i - cfg.tau2];
    sum2 += d * d;
  }
  return from_sums(sum1, sum2, cfg);
}

double estimate_hurst(const std::vector<double>& series,
                      const EstimatorConfig& cfg, std::size_t t_index) {
  return estimate_window(series, cfg, t_index).hurst;
}

RollingHurst::RollingHurst(const std::vector<double>& series,
                           EstimatorConfig cfg)
    : cfg_(cfg), length_(series.size()) {
  cfg_.validate();
  // cumK_[j] = sum over m <= j of the squared tauK-increment ending at m
  // (zero while the increment does not fit).
  cum1_.assign(length_, 0.0);
  cum2_.assign(length_, 0.0);
  double acc1 = 0.0, acc2 = 0.0;
  for (std::size_t j = 0; j < length_; ++j) {
    if (j >= static_cast<std::size_t>(cfg_.tau1)) {
      const double d = series[j] - series[j - cfg_.tau1];
      acc1 += d * d;
    }
    if (j >= static_cast<std::size_t>(cfg_.tau2)) {
      const double d = series[j] - series[j - cfg_.tau2];
      acc2 += d * d;
    }
    cum1_[j] = acc1;
    cum2_[j] = acc2;
  }
}

std::size_t RollingHurst::first_index() const {
  return static_cast<std::size_t>(cfg_.window_T);
}

HurstEstimate RollingHurst::at(std::size_t t_index) const {
  if (t_index < first_index() || t_index >= length_) {
    throw std::out_of_range("estimation window does not fit in the series");
  }
  // Window sum over increments ending in (t - (T - tau), ..., t].
  const std::size_t lo1 = t_index - (cfg_.window_T - cfg_.tau1) - 1;
  const std::size_t lo2 = t_index - (cfg_.window_T - cfg_.tau2) - 1;
  const double sum1 = cum1_[t_index] - cum1_[lo1];
  const double sum2 = cum2_[t_index] - cum2_[lo2];
  return from_sums(sum1, sum2, cfg_);
}

std::vector<RollingPoint> rolling_hurst(const std::vector<double>& series,
                                        const EstimatorConfig& cfg) {
  cfg.validate();
  std::vector<RollingPoint> out;
  if (series.size() <= static_cast<std::size_t>(cfg.window_T)) return out;
  const RollingHurst roller(series, cfg);
  out.reserve(series.size() - cfg.window_T);
  for (std::size_t t = roller.first_index(); t < series.size(); ++t) {
    try {
      RollingPoint p;
      p.index = t;
      p.estimate = roller.at(t);
      out.push_back(p);
    } catch (const std::runtime_error&) {
      // Degenerate window: reported as a gap, never fatal.
    }
  }
  return out;
}

}  // namespace fbmf
