#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace fbmf {

// Parameters of a fractional Brownian motion: Hurst exponent in (0,1)
// and a positive volatility scale. Validated on construction.
struct FbmSpec {
  double hurst;
  double sigma;
  FbmSpec(double hurst_, double sigma_);
};

// Strictly increasing, finite, non-negative sampling times.
struct TimeGrid {
  std::vector<double> times;
  explicit TimeGrid(std::vector<double> times_);
  std::size_t size() const { return times.size(); }
};

// Cov(X_t, X_s) = (sigma^2/2) (|t|^{2H} + |s|^{2H} - |t-s|^{2H}).
double process_covariance(const FbmSpec& spec, double t, double s);

// Cov(X_t - X_s, X_v - X_u) for intervals [s,t] and [u,v]:
// (sigma^2/2) (|u-t|^{2H} + |v-s|^{2H} - |v-t|^{2H} - |u-s|^{2H}).
// Requires s <= t and u <= v.
double increment_covariance(const FbmSpec& spec, double s, double t, double u,
                            double v);

// Autocovariance of unit-spacing-dt increments at integer lag k:
// Cov(X_{(j+k+1)dt} - X_{(j+k)dt}, X_{(j+1)dt} - X_{j dt}).
double fgn_autocovariance(const FbmSpec& spec, double dt, long k);

// Covariance matrix of the increments between consecutive entries of
// `times` (times[0] anchors the first increment at X_{times[0]}).
Eigen::MatrixXd increment_covariance_matrix(const FbmSpec& spec,
                                            const std::vector<double>& times);

// Exact simulation of `count` independent sample paths observed on
// `grid`, one path per row, deterministic in `seed` (independent of the
// thread count). X_0 = 0; if 0 is not in the grid the path is still
// anchored there internally. Uniform grids above a size threshold use
// circulant embedding (FFT); anything else uses a Cholesky factor of
// the increment covariance. Both are exact in distribution. Throws
// std::runtime_error if the covariance is numerically non-positive-
// definite (degenerate grid) even after one bounded jitter rescue.
Eigen::MatrixXd simulate_path(const FbmSpec& spec, const TimeGrid& grid,
                              std::uint64_t seed, int count);

// Deterministic stream mixer used to derive per-chunk RNG seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fbmf
