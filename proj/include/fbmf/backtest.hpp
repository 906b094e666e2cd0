#pragma once

// Rolling forecast-and-trade pipeline over an observed series: estimate
// the model in a trailing window (or inject known parameters), build the
// predictor, trade the thresholded sign of the forecast, and report the
// empirical counterparts of the theoretical accuracy metrics.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fbmf/hurst_estimation.hpp"

namespace fbmf {

struct SeriesRecord {
  std::string timestamp;  // monotone integer or ISO-8601 token
  double value = 0.0;     // log-price or log-volatility observation
};

enum class SeriesFormat { csv };

enum class LagMode { naive, optimal };
enum class ThresholdMode { zero, optimal };

struct BacktestConfig {
  int horizon_steps = 1;  // forecast horizon h, in sampling steps
  int n_lags = 1;
  LagMode lag_mode = LagMode::naive;
  ThresholdMode threshold_mode = ThresholdMode::zero;
  double lambda = 0.0;  // risk aversion for the optimal threshold
  EstimatorConfig estimator;
  // When both are set, estimation is bypassed entirely and every step
  // uses these parameters (isolates pipeline correctness from
  // estimation error). Setting only one is an error.
  std::optional<double> known_hurst;
  std::optional<double> known_sigma;

  void validate() const;
};

struct StepRecord {
  std::string timestamp;      // decision time
  double hurst = 0.0;         // raw estimate (unclamped) or injected value
  double forecast = 0.0;
  int position = 0;           // -1, 0, +1
  double realized = 0.0;      // series change over the next h steps
  double strategy_return = 0.0;  // position * realized
};

// Aggregates use the sign convention of the thresholded strategy: a step
// lands in the plus bucket when a position was taken and the strategy
// return is >= 0, in the minus bucket when it is < 0, and in the zero
// bucket when no position was taken; the three proportions sum to one
// exactly. Standard errors account for overlapping evaluation windows
// via a Bartlett-kernel long-run variance with lag window = horizon.
struct BacktestReport {
  BacktestConfig config;
  std::size_t series_length = 0;
  std::string first_timestamp;
  std::string last_timestamp;

  std::vector<StepRecord> steps;
  std::size_t step_count = 0;    // recorded steps
  std::size_t skipped_steps = 0;  // estimation-failure gaps

  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_zero = 0.0;
  double p_plus_se = 0.0;
  double mean_return = 0.0;
  double mean_return_se = 0.0;
  double mean_loss = 0.0;  // empirical lower absolute semi-deviation
  double mean_loss_se = 0.0;
  double risk_adjusted = 0.0;  // mean_return - lambda * mean_loss
  bool overlapping_evaluation = true;
};

// Strict CSV ingestion: header `timestamp,value`, strictly increasing
// timestamps (numeric order when every timestamp parses as an integer,
// lexicographic otherwise — correct for ISO-8601), finite values.
// Violations throw std::runtime_error naming the offending line; the
// file is rejected rather than silently sorted.
std::vector<SeriesRecord> load_series(const std::string& path,
                                      SeriesFormat format = SeriesFormat::csv);

// Round continuous lag durations to integer sampling steps (minimum
// one), bumping collisions upward so the set stays strictly increasing.
std::vector<int> round_lags_to_steps(const std::vector<double>& lags);

BacktestReport run_backtest(const std::vector<SeriesRecord>& series,
                            const BacktestConfig& cfg);

// Side-by-side aggregate comparison of two reports over the same series
// and horizon; throws std::invalid_argument when they do not match.
struct ComparisonRow {
  std::string label;
  double left = 0.0;
  double right = 0.0;
};
std::vector<ComparisonRow> compare_reports(const BacktestReport& left,
                                           const BacktestReport& right);

// Machine-readable emission: aggregates + config echo as JSON (full
// precision, round-trippable), per-step records as CSV.
std::string report_to_json(const BacktestReport& report);
void write_steps_csv(const BacktestReport& report, std::ostream& out);

}  // namespace fbmf
