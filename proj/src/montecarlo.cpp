#include "fbmf/montecarlo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fbmf/threads.hpp"

namespace fbmf {

namespace {

constexpr std::uint64_t kChunk = 1u << 16;  // trials per generator stream

// Lower-triangular factor of the joint covariance of
// (S_1, ..., S_n, R): the adjacent past returns over [-delta_i,
// -delta_{i-1}] followed by the future return over [0, h].
Eigen::MatrixXd joint_factor(const FbmSpec& spec, const LagStructure& lags) {
  const int n = lags.n();
  Eigen::MatrixXd cov(n + 1, n + 1);
  const auto lo = [&](int i) { return -lags.lags[static_cast<std::size_t>(i) + 1]; };
  const auto hi = [&](int i) { return -lags.lags[static_cast<std::size_t>(i)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      cov(i, j) = increment_covariance(spec, lo(i), hi(i), lo(j), hi(j));
      cov(j, i) = cov(i, j);
    }
    cov(n, i) = increment_covariance(spec, 0.0, lags.horizon_h, lo(i), hi(i));
    cov(i, n) = cov(n, i);
  }
  cov(n, n) = increment_covariance(spec, 0.0, lags.horizon_h, 0.0,
                                   lags.horizon_h);
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "joint return covariance is not positive definite");
  }
  return llt.matrixL();
}

// Per-chunk accumulator; reduced sequentially so that results do not
// depend on how chunks were scheduled across threads.
struct Sums {
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t n_zero = 0;
  double sum_ret = 0.0;
  double sum_ret_sq = 0.0;
  double sum_loss = 0.0;
  double sum_loss_sq = 0.0;
};

McEstimate proportion(std::uint64_t count, std::uint64_t trials) {
  const double p = static_cast<double>(count) / static_cast<double>(trials);
  McEstimate e;
  e.value = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return e;
}

McEstimate sample_mean(double sum, double sum_sq, std::uint64_t trials) {
  const double n = static_cast<double>(trials);
  McEstimate e;
  e.value = sum / n;
  const double var = (sum_sq - sum * sum / n) / (n - 1.0);
  e.std_error = std::sqrt(std::max(var, 0.0) / n);
  return e;
}

// Shared driver: streams chunked trials of (S, R), letting `record`
// fold each (forecast, realized) pair into the chunk's accumulator.
template <typename Record>
std::vector<Sums> run_chunks(const FbmSpec& spec, const LagStructure& lags,
                             std::uint64_t trials, std::uint64_t seed,
                             const Record& record) {
  if (trials == 0) throw std::invalid_argument("trial count must be positive");
  const Eigen::MatrixXd factor = joint_factor(spec, lags);
  const PredictorSolution sol = solve_predictor(spec, lags);
  const Eigen::Map<const Eigen::VectorXd> weights(
      sol.weights.data(), static_cast<Eigen::Index>(sol.weights.size()));
  const int n = lags.n();

  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Sums> partial(chunks);

#pragma omp parallel for schedule(dynamic) num_threads(thread_budget())
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t count = std::min<std::uint64_t>(kChunk, trials - lo);
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(c)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd z(n + 1), x(n + 1);
    Sums& s = partial[static_cast<std::size_t>(c)];
    for (std::uint64_t t = 0; t < count; ++t) {
      for (int i = 0; i <= n; ++i) z(i) = gauss(rng);
      x.noalias() = factor * z;
      const double forecast = weights.dot(x.head(n));
      record(forecast, x(n), s);
    }
  }
  return partial;
}

Sums reduce(const std::vector<Sums>& partial) {
  Sums total;
  for (const Sums& s : partial) {
    total.n_plus += s.n_plus;
    total.n_minus += s.n_minus;
    total.n_zero += s.n_zero;
    total.sum_ret += s.sum_ret;
    total.sum_ret_sq += s.sum_ret_sq;
    total.sum_loss += s.sum_loss;
    total.sum_loss_sq += s.sum_loss_sq;
  }
  return total;
}

}  // namespace

McHitRatio mc_hit_ratio(const FbmSpec& spec, const LagStructure& lags,
                        std::uint64_t trials, std::uint64_t seed) {
  const auto record = [](double forecast, double realized, Sums& s) {
    if (forecast * realized > 0.0) ++s.n_plus;
  };
  const Sums total = reduce(run_chunks(spec, lags, trials, seed, record));
  McHitRatio out;
  out.trials = trials;
  out.hit_ratio = proportion(total.n_plus, trials);
  return out;
}

McTernary mc_ternary(const FbmSpec& spec, const LagStructure& lags,
                     double theta, std::uint64_t trials, std::uint64_t seed) {
  if (!(theta >= 0.0)) {
    throw std::invalid_argument("threshold must be >= 0");
  }
  const auto record = [theta](double forecast, double realized, Sums& s) {
    const bool traded = std::abs(forecast) >= theta && forecast != 0.0;
    if (!traded) {
      ++s.n_zero;
      return;
    }
    const double y = (forecast > 0.0 ? realized : -realized);
    if (y > 0.0) {
      ++s.n_plus;
    } else {
      ++s.n_minus;
    }
    s.sum_ret += y;
    s.sum_ret_sq += y * y;
    const double loss = std::max(-y, 0.0);
    s.sum_loss += loss;
    s.sum_loss_sq += loss * loss;
  };
  const Sums total = reduce(run_chunks(spec, lags, trials, seed, record));

  McTernary out;
  out.trials = trials;
  out.p_plus = proportion(total.n_plus, trials);
  out.p_minus = proportion(total.n_minus, trials);
  out.p_zero = proportion(total.n_zero, trials);
  out.mean_return = sample_mean(total.sum_ret, total.sum_ret_sq, trials);
  out.mean_loss = sample_mean(total.sum_loss, total.sum_loss_sq, trials);
  return out;
}

}  // namespace fbmf
