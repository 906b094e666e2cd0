// Linear MSE-optimal prediction of the future increment. The normal-
// equation solver is validated against the n = 1 closed form, against
// an ordinary-least-squares oracle on simulated paths, and against the
// algebraic optimality property that any weight perturbation increases
// the (exactly computable) mean squared error.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fbmf/fbm_core.hpp"
#include "fbmf/predictor.hpp"

using namespace fbmf;

namespace {

// Exact E[(R - c S)^2] for the n = 1 predictor R ~ c * S, from the
// covariance kernel; used to probe optimality without sampling noise.
double exact_mse_n1(const FbmSpec& spec, double h, double delta, double c) {
  const double var_r = increment_covariance(spec, 0.0, h, 0.0, h);
  const double var_s =
      increment_covariance(spec, -delta, 0.0, -delta, 0.0);
  const double cov_rs = increment_covariance(spec, 0.0, h, -delta, 0.0);
  return var_r - 2.0 * c * cov_rs + c * c * var_s;
}

}  // namespace

TEST_CASE("lag structures are validated") {
  CHECK_THROWS_AS(LagStructure(0.0, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LagStructure(1.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(LagStructure(1.0, {-0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LagStructure(1.0, {0.0, 2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LagStructure(1.0, {0.0, 1.0, 1.0}), std::invalid_argument);
  const LagStructure ok{1.0, {0.0, 1.0, 3.0}};
  CHECK(ok.n() == 2);
}

TEST_CASE("single-lag weight closed form") {
  const FbmSpec persistent{0.65, 1.0};
  CHECK(beta1_closed_form(persistent, 1.0, 1.0) ==
        doctest::Approx(0.23114441334491628).epsilon(1e-15));
  const FbmSpec rough{0.15, 1.0};
  CHECK(beta1_closed_form(rough, 1.0, 1.0) ==
        doctest::Approx(-0.38442779332754186).epsilon(1e-15));
  const FbmSpec bm{0.5, 1.0};
  CHECK(beta1_closed_form(bm, 1.0, 0.7) == 0.0);
}

TEST_CASE("single-lag weight limits at the persistence extremes") {
  const FbmSpec nearly_one{0.999, 1.0};
  CHECK(std::abs(beta1_closed_form(nearly_one, 1.0, 1.0) - 1.0) < 3e-3);
  const FbmSpec nearly_zero{0.001, 1.0};
  for (double delta : {0.3, 1.0, 3.0}) {
    CHECK(std::abs(beta1_closed_form(nearly_zero, 1.0, delta) + 0.5) < 3e-3);
  }
}

TEST_CASE("single-lag weight sign tracks the persistence regime") {
  for (double hurst : {0.55, 0.65, 0.8, 0.95}) {
    CHECK(beta1_closed_form(FbmSpec{hurst, 1.0}, 1.0, 1.0) > 0.0);
  }
  for (double hurst : {0.05, 0.2, 0.35, 0.45}) {
    CHECK(beta1_closed_form(FbmSpec{hurst, 1.0}, 1.0, 1.0) < 0.0);
  }
}

TEST_CASE("solver reproduces the single-lag closed form and scalars") {
  const FbmSpec spec{0.65, 1.0};
  const LagStructure lags{1.0, {0.0, 1.0}};
  const PredictorSolution sol = solve_predictor(spec, lags);
  REQUIRE(sol.weights.size() == 1);
  CHECK(sol.weights[0] ==
        doctest::Approx(beta1_closed_form(spec, 1.0, 1.0)).epsilon(1e-12));
  CHECK(sol.a == doctest::Approx(0.23114441334491628).epsilon(1e-12));
  CHECK(sol.b == doctest::Approx(0.97291945205111121).epsilon(1e-12));
  CHECK(sol.mse == doctest::Approx(0.94657226017943443).epsilon(1e-12));
  CHECK(sol.mse == doctest::Approx(sol.b * sol.b).epsilon(1e-14));
  CHECK_FALSE(sol.ill_conditioned);
}

TEST_CASE("martingale index snaps to the zero predictor") {
  const FbmSpec bm{0.5, 2.0};
  const LagStructure lags{3.0, {0.0, 1.0, 4.0}};
  const PredictorSolution sol = solve_predictor(bm, lags);
  for (double w : sol.weights) CHECK(w == 0.0);
  CHECK(sol.a == 0.0);
  CHECK(sol.b == doctest::Approx(2.0 * std::pow(3.0, 0.5)).epsilon(1e-15));
  CHECK(sol.mse == doctest::Approx(4.0 * 3.0).epsilon(1e-15));

  // The snap window is 1e-10 wide; just outside it the solver works.
  const PredictorSolution snapped =
      solve_predictor(FbmSpec{0.5 + 5e-11, 1.0}, LagStructure{1.0, {0.0, 1.0}});
  CHECK(snapped.a == 0.0);
  const PredictorSolution live =
      solve_predictor(FbmSpec{0.5 + 1e-9, 1.0}, LagStructure{1.0, {0.0, 1.0}});
  CHECK(live.a > 0.0);
}

TEST_CASE("forecast is the weighted sum of adjacent past returns") {
  const FbmSpec spec{0.65, 1.0};
  const PredictorSolution sol =
      solve_predictor(spec, LagStructure{1.0, {0.0, 1.0}});
  CHECK(forecast(sol, {0.01}) ==
        doctest::Approx(0.0023114441334491628).epsilon(1e-12));
  CHECK(forecast(sol, {0.0}) == 0.0);

  const FbmSpec rough{0.15, 1.0};
  const PredictorSolution rsol =
      solve_predictor(rough, LagStructure{1.0, {0.0, 1.0}});
  // Anti-persistence flips the sign: a negative return forecasts a rise.
  CHECK(forecast(rsol, {-0.02}) ==
        doctest::Approx(0.0076885558665508372).epsilon(1e-12));
  CHECK(forecast(rsol, {-0.02}) > 0.0);

  CHECK_THROWS_AS(forecast(sol, {0.01, 0.02}), std::invalid_argument);
}

TEST_CASE("anchored weights telescope to the same forecast") {
  const FbmSpec spec{0.65, 1.0};
  const LagStructure lags{1.0, {0.0, 0.5, 2.0}};
  const PredictorSolution sol = solve_predictor(spec, lags);
  const std::vector<double> anchored = adjacent_to_anchored_weights(sol, lags);
  REQUIRE(anchored.size() == 2);
  CHECK(anchored[0] ==
        doctest::Approx(sol.weights[0] - sol.weights[1]).epsilon(1e-14));
  CHECK(anchored[1] == doctest::Approx(sol.weights[1]).epsilon(1e-14));

  // On an arbitrary value path the two representations coincide.
  // Values at t-2.0, t-0.5, t.
  const double v_far = 0.30, v_mid = 0.41, v_now = 0.37;
  const double adjacent_forecast =
      forecast(sol, {v_now - v_mid, v_mid - v_far});
  const double anchored_forecast =
      anchored[0] * (v_now - v_mid) + anchored[1] * (v_now - v_far);
  CHECK(adjacent_forecast ==
        doctest::Approx(anchored_forecast).epsilon(1e-13));

  // Single-lag case degenerates to the same weight.
  const LagStructure one{1.0, {0.0, 1.0}};
  const PredictorSolution sol1 = solve_predictor(spec, one);
  CHECK(adjacent_to_anchored_weights(sol1, one)[0] ==
        doctest::Approx(sol1.weights[0]));

  // The telescoping identity needs the anchor at zero.
  const LagStructure offset{1.0, {0.25, 1.0, 2.0}};
  const PredictorSolution sol_off = solve_predictor(spec, offset);
  CHECK_THROWS_AS(adjacent_to_anchored_weights(sol_off, offset),
                  std::invalid_argument);
}

TEST_CASE("regression oracle on simulated paths recovers the weight") {
  const FbmSpec spec{0.3, 1.0};
  const TimeGrid grid{{0.0, 1.0, 2.0}};
  const int paths = 200000;
  const Eigen::MatrixXd x = simulate_path(spec, grid, 424242, paths);
  // Regress the future increment on the past one, no intercept.
  double sxx = 0.0, sxy = 0.0;
  for (int p = 0; p < paths; ++p) {
    const double s = x(p, 1) - x(p, 0);
    const double r = x(p, 2) - x(p, 1);
    sxx += s * s;
    sxy += s * r;
  }
  const double ols = sxy / sxx;
  const double beta = beta1_closed_form(spec, 1.0, 1.0);
  // OLS standard error is about sqrt((mse/var_s)/paths) ~ 0.0022.
  CHECK(std::abs(ols - beta) < 0.008);

  // Empirical forecast MSE matches the solver's value within 2%.
  const PredictorSolution sol =
      solve_predictor(spec, LagStructure{1.0, {0.0, 1.0}});
  double sse = 0.0;
  for (int p = 0; p < paths; ++p) {
    const double s = x(p, 1) - x(p, 0);
    const double r = x(p, 2) - x(p, 1);
    const double e = r - sol.weights[0] * s;
    sse += e * e;
  }
  const double empirical_mse = sse / static_cast<double>(paths);
  CHECK(std::abs(empirical_mse - sol.mse) < 0.02 * sol.mse);

  // Unbiasedness: mean forecast error is zero within Monte Carlo noise.
  double err_sum = 0.0;
  for (int p = 0; p < paths; ++p) {
    const double s = x(p, 1) - x(p, 0);
    const double r = x(p, 2) - x(p, 1);
    err_sum += r - sol.weights[0] * s;
  }
  const double mean_err = err_sum / static_cast<double>(paths);
  CHECK(std::abs(mean_err) < 3.0 * sol.b / std::sqrt(double(paths)));
}

TEST_CASE("perturbing the optimal weight strictly increases the error") {
  const FbmSpec spec{0.65, 1.0};
  const double beta = beta1_closed_form(spec, 1.0, 1.0);
  const double at_opt = exact_mse_n1(spec, 1.0, 1.0, beta);
  CHECK(exact_mse_n1(spec, 1.0, 1.0, 1.1 * beta) > at_opt);
  CHECK(exact_mse_n1(spec, 1.0, 1.0, 0.9 * beta) > at_opt);
  const PredictorSolution sol =
      solve_predictor(spec, LagStructure{1.0, {0.0, 1.0}});
  CHECK(at_opt == doctest::Approx(sol.mse).epsilon(1e-12));
}

TEST_CASE("multi-lag solutions improve on fewer lags") {
  const FbmSpec spec{0.15, 1.0};
  const PredictorSolution one =
      solve_predictor(spec, LagStructure{1.0, {0.0, 1.0}});
  const PredictorSolution two =
      solve_predictor(spec, LagStructure{1.0, {0.0, 0.4, 2.7}});
  CHECK(two.a > one.a);
  CHECK(two.mse < one.mse);
  CHECK(two.a * two.a + two.b * two.b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("near-duplicate lags are flagged or rejected rather than trusted") {
  // A 1e-10 gap leaves one past return with variance (1e-10)^(2H)
  // ~ 1e-13 against the unit-variance first return, pushing the
  // covariance condition number past the reporting threshold.
  const FbmSpec spec{0.65, 1.0};
  bool guarded = false;
  try {
    const PredictorSolution sol = solve_predictor(
        spec, LagStructure{1.0, {0.0, 1.0, 1.0 + 1e-10}});
    guarded = sol.ill_conditioned;
  } catch (const std::runtime_error&) {
    guarded = true;
  }
  CHECK(guarded);
}
