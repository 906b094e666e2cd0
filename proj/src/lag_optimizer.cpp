#include "fbmf/lag_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fbmf/accuracy.hpp"
#include "fbmf/predictor.hpp"
#include "fbmf/threads.hpp"
#include "numopt.hpp"

namespace fbmf {

namespace {

// Objective value handed to the minimizer when a candidate lag set is
// unusable (nearly coincident lags, singular return covariance). The
// true objective lies in [-1, -0.5], so this is decisively worse.
constexpr double kPenalty = 1.0e3;
constexpr double kLogBound = 30.0;

std::vector<double> gaps_to_lags(const std::vector<double>& z) {
  std::vector<double> lags(z.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    acc += std::exp(z[i]);
    lags[i] = acc;
  }
  return lags;
}

std::vector<double> lags_to_gaps(const std::vector<double>& lags) {
  std::vector<double> z(lags.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    z[i] = std::log(lags[i] - prev);
    prev = lags[i];
  }
  return z;
}

// Negative hit ratio at unit horizon as a function of log-gaps.
double objective(const FbmSpec& spec, const std::vector<double>& z) {
  for (double v : z) {
    if (!std::isfinite(v) || std::abs(v) > kLogBound) return kPenalty;
  }
  try {
    const std::vector<double> lags = gaps_to_lags(z);
    std::vector<double> full(lags.size() + 1, 0.0);
    std::copy(lags.begin(), lags.end(), full.begin() + 1);
    const PredictorSolution sol =
        solve_predictor(spec, LagStructure{1.0, full});
    if (sol.ill_conditioned || !std::isfinite(sol.a)) return kPenalty;
    return -hit_ratio(sol);
  } catch (const std::exception&) {
    return kPenalty;
  }
}

// Geometric ladder delta_i = r^(i - (n+1)/2), which already satisfies the
// reciprocal pairing delta_i * delta_(n+1-i) = 1 around the horizon.
std::vector<double> ladder_start(double ratio, int n) {
  std::vector<double> lags(n);
  const double mid = 0.5 * (n + 1);
  for (int i = 1; i <= n; ++i) {
    lags[i - 1] = std::pow(ratio, static_cast<double>(i) - mid);
  }
  return lags;
}

}  // namespace

double hit_ratio_of_lags(const FbmSpec& spec, double horizon,
                         const std::vector<double>& lags) {
  std::vector<double> full(lags.size() + 1, 0.0);
  std::copy(lags.begin(), lags.end(), full.begin() + 1);
  return hit_ratio(solve_predictor(spec, LagStructure{horizon, full}));
}

LagOptimum optimize_lags(const FbmSpec& spec, double horizon, int n) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("lag count must be between 1 and 8");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be finite and positive");
  }
  if (std::abs(spec.hurst - 0.5) <= 1.0e-10) {
    throw std::invalid_argument(
        "hit ratio is identically one half at hurst = 0.5; "
        "there is nothing to optimize");
  }

  const auto f = [&](const std::vector<double>& z) {
    return objective(spec, z);
  };

  // Five jittered geometric-ladder starts, optimized independently.
  constexpr double kRatios[5] = {2.0, 2.8, 3.6, 4.4, 5.2};
  std::vector<std::vector<double>> starts;
  std::mt19937_64 rng(0x6c61677374617274ULL);  // fixed: reproducible starts
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (double r : kRatios) {
    std::vector<double> z = lags_to_gaps(ladder_start(r, n));
    for (double& v : z) v += jitter(rng);
    starts.push_back(std::move(z));
  }

  std::vector<detail::NelderMeadResult> results(starts.size());
  const int budget =
      std::min<int>(thread_budget(), static_cast<int>(starts.size()));
#pragma omp parallel for schedule(dynamic) num_threads(budget)
  for (int i = 0; i < static_cast<int>(starts.size()); ++i) {
    results[i] = detail::nelder_mead(f, starts[i], 0.25, 1e-10, 1e-14, 4000);
  }

  detail::NelderMeadResult best = results[0];
  for (const auto& r : results) {
    if (r.value < best.value) best = r;
  }
  if (best.value >= kPenalty) {
    throw std::runtime_error("lag optimization failed to find a usable lag set");
  }

  // Restart the simplex with shrinking scales to escape the flat basin,
  // then polish each coordinate with a golden-section line search.
  for (double step : {0.02, 5e-4, 2e-5}) {
    best = detail::nelder_mead(f, best.x, step, 1e-12, 0.0, 2000);
  }
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (std::size_t j = 0; j < best.x.size(); ++j) {
      std::vector<double> z = best.x;
      const double center = z[j];
      const double val = detail::golden_section_min(
          [&](double t) {
            z[j] = t;
            return f(z);
          },
          center - 2e-4, center + 2e-4, 1e-12);
      z[j] = val;
      if (f(z) < best.value) {
        best.x = z;
        best.value = f(z);
      }
    }
  }

  LagOptimum out;
  out.n = n;
  out.lags = gaps_to_lags(best.x);
  out.hit_ratio = -best.value;
  for (double& lag : out.lags) lag *= horizon;
  return out;
}

}  // namespace fbmf
