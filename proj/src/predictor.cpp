#include "fbmf/predictor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbmf {

namespace {
constexpr double kHalfSnapTolerance = 1e-10;
constexpr double kIllConditioned = 1e12;
}  // namespace

LagStructure::LagStructure(double horizon_h_, std::vector<double> lags_)
    : horizon_h(horizon_h_), lags(std::move(lags_)) {
  if (!(horizon_h > 0.0) || !std::isfinite(horizon_h))
    throw std::invalid_argument("LagStructure: horizon must be positive");
  if (lags.size() < 2)
    throw std::invalid_argument(
        "LagStructure: need delta_0 and at least one further lag");
  if (!(lags.front() >= 0.0))
    throw std::invalid_argument("LagStructure: delta_0 must be >= 0");
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (!std::isfinite(lags[i]))
      throw std::invalid_argument("LagStructure: lags must be finite");
    if (i > 0 && !(lags[i] > lags[i - 1]))
      throw std::invalid_argument(
          "LagStructure: lags must be strictly increasing");
  }
}

PredictorSolution solve_predictor(const FbmSpec& spec,
                                  const LagStructure& lags) {
  const int n = lags.n();
  const double h = lags.horizon_h;
  const double sigma_h =
      spec.sigma * std::pow(h, spec.hurst);  // sd of the future return

  PredictorSolution sol;
  sol.weights.assign(static_cast<std::size_t>(n), 0.0);

  // Martingale snap: increments are independent, the optimal forecast
  // is identically zero and the normal equations degenerate gracefully.
  if (std::abs(spec.hurst - 0.5) <= kHalfSnapTolerance) {
    sol.a = 0.0;
    sol.b = sigma_h;
    sol.mse = sigma_h * sigma_h;
    return sol;
  }

  Eigen::MatrixXd cov_ss(n, n);
  Eigen::VectorXd cov_rs(n);
  for (int i = 0; i < n; ++i) {
    const double si_lo = -lags.lags[static_cast<std::size_t>(i) + 1];
    const double si_hi = -lags.lags[static_cast<std::size_t>(i)];
    cov_rs(i) = increment_covariance(spec, 0.0, h, si_lo, si_hi);
    for (int j = 0; j <= i; ++j) {
      const double sj_lo = -lags.lags[static_cast<std::size_t>(j) + 1];
      const double sj_hi = -lags.lags[static_cast<std::size_t>(j)];
      const double c = increment_covariance(spec, si_lo, si_hi, sj_lo, sj_hi);
      cov_ss(i, j) = c;
      cov_ss(j, i) = c;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(cov_ss);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "solve_predictor: singular past-return covariance "
        "(duplicated or degenerate lags)");
  const Eigen::VectorXd beta = llt.solve(cov_rs);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov_ss);
  const double ev_min = eig.eigenvalues().minCoeff();
  const double ev_max = eig.eigenvalues().maxCoeff();
  sol.condition_number =
      ev_min > 0.0 ? ev_max / ev_min : std::numeric_limits<double>::infinity();
  sol.ill_conditioned = !(sol.condition_number < kIllConditioned);

  double a2 = cov_rs.dot(beta);
  a2 = std::max(a2, 0.0);
  double b2 = sigma_h * sigma_h - a2;
  b2 = std::max(b2, 0.0);
  for (int i = 0; i < n; ++i) sol.weights[static_cast<std::size_t>(i)] = beta(i);
  sol.a = std::sqrt(a2);
  sol.b = std::sqrt(b2);
  sol.mse = b2;
  return sol;
}

double beta1_closed_form(const FbmSpec& spec, double h, double delta1) {
  if (!(h > 0.0) || !(delta1 > 0.0))
    throw std::invalid_argument("beta1_closed_form: h and delta1 must be > 0");
  // In the martingale case the weight is identically zero; return it
  // exactly (matching solve_predictor) instead of leaking the rounding
  // residue of the power expressions.
  if (std::abs(spec.hurst - 0.5) <= kHalfSnapTolerance) return 0.0;
  const double r = h / delta1;
  const double two_h = 2.0 * spec.hurst;
  return 0.5 * (std::pow(r + 1.0, two_h) - std::pow(r, two_h) - 1.0);
}

double forecast(const PredictorSolution& solution,
                const std::vector<double>& observed_returns) {
  if (observed_returns.size() != solution.weights.size())
    throw std::invalid_argument(
        "forecast: expected one observed return per weight");
  double value = 0.0;
  for (std::size_t i = 0; i < solution.weights.size(); ++i)
    value += solution.weights[i] * observed_returns[i];
  return value;
}

std::vector<double> adjacent_to_anchored_weights(
    const PredictorSolution& solution, const LagStructure& lags) {
  if (lags.n() != static_cast<int>(solution.weights.size()))
    throw std::invalid_argument(
        "adjacent_to_anchored_weights: solution/lags size mismatch");
  if (lags.lags.front() != 0.0)
    throw std::invalid_argument(
        "adjacent_to_anchored_weights: requires delta_0 = 0");
  // Adjacent returns telescope: the coefficient of X_{t-delta_i} in the
  // forecast must match between representations, which pins
  // w_i = beta_i - beta_{i+1} (w_n = beta_n).
  const std::size_t n = solution.weights.size();
  std::vector<double> anchored(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    anchored[i] = solution.weights[i] - solution.weights[i + 1];
  anchored[n - 1] = solution.weights[n - 1];
  return anchored;
}

}  // namespace fbmf
