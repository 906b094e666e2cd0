#include "fbmf/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "fbmf/accuracy.hpp"
#include "fbmf/lag_optimizer.hpp"
#include "fbmf/predictor.hpp"
#include "fbmf/strategy.hpp"

namespace fbmf {

namespace {

// Downstream clamp for raw Hurst estimates fed into model formulas.
constexpr double kHurstFloor = 0.01;
constexpr double kHurstCeil = 0.99;

[[noreturn]] void reject_line(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + why);
}

bool parse_integer(const std::string& token, long long& out) {
  try {
    std::size_t used = 0;
    out = std::stoll(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Long-run standard error of the sample mean under serial correlation:
// Bartlett-weighted autocovariances up to the given lag window.
double newey_west_se(const std::vector<double>& x, int lag_window) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  double long_run = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = x[i] - mean;
    long_run += e * e;
  }
  long_run /= static_cast<double>(n);
  const int max_lag = std::min<int>(lag_window, static_cast<int>(n) - 1);
  for (int k = 1; k <= max_lag; ++k) {
    double gamma = 0.0;
    for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i) {
      gamma += (x[i] - mean) * (x[i - static_cast<std::size_t>(k)] - mean);
    }
    gamma /= static_cast<double>(n);
    const double weight = 1.0 - static_cast<double>(k) / (max_lag + 1.0);
    long_run += 2.0 * weight * gamma;
  }
  return std::sqrt(std::max(long_run, 0.0) / static_cast<double>(n));
}

std::vector<int> naive_steps(int n, int horizon) {
  std::vector<int> steps(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) steps[static_cast<std::size_t>(i)] = (i + 1) * horizon;
  return steps;
}

LagStructure to_structure(const std::vector<int>& steps, int horizon) {
  std::vector<double> lags(steps.size() + 1, 0.0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    lags[i + 1] = static_cast<double>(steps[i]);
  }
  return LagStructure{static_cast<double>(horizon), lags};
}

const char* lag_mode_name(LagMode m) {
  return m == LagMode::naive ? "naive" : "optimal";
}
const char* threshold_mode_name(ThresholdMode m) {
  return m == ThresholdMode::zero ? "zero" : "optimal";
}

}  // namespace

void BacktestConfig::validate() const {
  if (horizon_steps < 1) {
    throw std::invalid_argument("horizon must be at least one step");
  }
  if (n_lags < 1 || n_lags > 8) {
    throw std::invalid_argument("lag count must be between 1 and 8");
  }
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("risk aversion must be finite");
  }
  if (known_hurst.has_value() != known_sigma.has_value()) {
    throw std::invalid_argument(
        "known-parameter injection requires both hurst and sigma");
  }
  if (known_hurst) {
    if (!(*known_hurst > 0.0 && *known_hurst < 1.0)) {
      throw std::invalid_argument("injected hurst must lie in (0, 1)");
    }
    if (!(*known_sigma > 0.0)) {
      throw std::invalid_argument("injected sigma must be positive");
    }
  } else {
    estimator.validate();
  }
}

std::vector<int> round_lags_to_steps(const std::vector<double>& lags) {
  std::vector<int> steps(lags.size());
  int prev = 0;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    steps[i] = std::max<int>(prev + 1,
                             static_cast<int>(std::lround(lags[i])));
    steps[i] = std::max(steps[i], 1);
    prev = steps[i];
  }
  return steps;
}

std::vector<SeriesRecord> load_series(const std::string& path,
                                      SeriesFormat format) {
  if (format != SeriesFormat::csv) {
    throw std::invalid_argument("unsupported series format");
  }
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open series file: " + path);
  }

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw std::runtime_error("series file is empty: " + path);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,value") {
    reject_line(line_no, "expected header 'timestamp,value'");
  }

  std::vector<SeriesRecord> out;
  bool integer_mode = false;
  long long prev_int = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // tolerate blank lines

    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      reject_line(line_no, "expected 'timestamp,value'");
    }
    SeriesRecord rec;
    rec.timestamp = line.substr(0, comma);
    const std::string value_token = line.substr(comma + 1);
    if (rec.timestamp.empty()) reject_line(line_no, "empty timestamp");
    try {
      std::size_t used = 0;
      rec.value = std::stod(value_token, &used);
      if (used != value_token.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      reject_line(line_no, "non-numeric value '" + value_token + "'");
    }
    if (!std::isfinite(rec.value)) {
      reject_line(line_no, "value is not finite");
    }

    if (out.empty()) {
      integer_mode = parse_integer(rec.timestamp, prev_int);
    } else if (integer_mode) {
      long long ts = 0;
      if (!parse_integer(rec.timestamp, ts)) {
        reject_line(line_no, "non-integer timestamp in an integer series");
      }
      if (ts <= prev_int) {
        reject_line(line_no, "timestamp not strictly increasing");
      }
      prev_int = ts;
    } else if (rec.timestamp <= out.back().timestamp) {
      reject_line(line_no, "timestamp not strictly increasing");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

BacktestReport run_backtest(const std::vector<SeriesRecord>& series,
                            const BacktestConfig& cfg) {
  cfg.validate();
  const std::size_t m = series.size();
  const int h = cfg.horizon_steps;
  const bool known = cfg.known_hurst.has_value();

  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = series[i].value;

  std::optional<RollingHurst> roller;
  std::size_t t_begin = known ? 0 : static_cast<std::size_t>(cfg.estimator.window_T);
  if (!known) roller.emplace(values, cfg.estimator);
  if (cfg.lag_mode == LagMode::naive) {
    t_begin = std::max<std::size_t>(
        t_begin, static_cast<std::size_t>(cfg.n_lags) * static_cast<std::size_t>(h));
  } else {
    // Optimal lag sets depend on the running estimate; coverage is
    // re-checked per step. Require at least the horizon's worth.
    t_begin = std::max<std::size_t>(t_begin, static_cast<std::size_t>(h));
  }
  if (m <= t_begin + static_cast<std::size_t>(h)) {
    throw std::invalid_argument(
        "series too short for the window, lags, and horizon");
  }
  const std::size_t t_end = m - static_cast<std::size_t>(h);  // exclusive

  BacktestReport rep;
  rep.config = cfg;
  rep.series_length = m;
  rep.first_timestamp = series.front().timestamp;
  rep.last_timestamp = series.back().timestamp;
  rep.steps.reserve(t_end - t_begin);

  // Cache of the optimal-lag search, keyed by the clamped estimate
  // rounded to 0.01: a fresh search runs only when the estimate has
  // moved into a bucket not seen before.
  std::map<long, std::vector<int>> lag_cache;

  for (std::size_t t = t_begin; t < t_end; ++t) {
    double hurst_raw = 0.0;
    double sigma = 0.0;
    if (known) {
      hurst_raw = *cfg.known_hurst;
      sigma = *cfg.known_sigma;
    } else {
      try {
        const HurstEstimate est = roller->at(t);
        hurst_raw = est.hurst;
        sigma = est.sigma;
      } catch (const std::runtime_error&) {
        ++rep.skipped_steps;  // degenerate window: logged gap
        continue;
      }
    }
    const double hurst = std::clamp(hurst_raw, kHurstFloor, kHurstCeil);
    if (!(sigma > 0.0)) {
      ++rep.skipped_steps;
      continue;
    }
    const FbmSpec spec{hurst, sigma};

    std::vector<int> lag_steps;
    if (cfg.lag_mode == LagMode::naive) {
      lag_steps = naive_steps(cfg.n_lags, h);
    } else {
      const long bucket = std::lround(hurst * 100.0);
      auto it = lag_cache.find(bucket);
      if (it == lag_cache.end()) {
        // The optimizer rejects the flat objective at hurst = 1/2;
        // substitute the naive ladder there (any lag set is optimal).
        std::vector<int> steps;
        if (std::abs(hurst - 0.5) <= 1.0e-10) {
          steps = naive_steps(cfg.n_lags, h);
        } else {
          const LagOptimum opt =
              optimize_lags(spec, static_cast<double>(h), cfg.n_lags);
          steps = round_lags_to_steps(opt.lags);
        }
        it = lag_cache.emplace(bucket, std::move(steps)).first;
      }
      lag_steps = it->second;
    }
    const std::size_t max_lag = static_cast<std::size_t>(lag_steps.back());
    if (t < max_lag) {
      ++rep.skipped_steps;  // lags reach before the series start
      continue;
    }

    const LagStructure structure = to_structure(lag_steps, h);
    const PredictorSolution sol = solve_predictor(spec, structure);

    double forecast = 0.0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < lag_steps.size(); ++i) {
      const std::size_t d = static_cast<std::size_t>(lag_steps[i]);
      forecast += sol.weights[i] * (values[t - prev] - values[t - d]);
      prev = d;
    }

    double theta = 0.0;
    if (cfg.threshold_mode == ThresholdMode::optimal && sol.a > 0.0) {
      theta = optimal_threshold(sol, cfg.lambda).theta_star;
    }

    int position = 0;
    if (std::abs(forecast) >= theta && forecast != 0.0) {
      position = forecast > 0.0 ? 1 : -1;
    }

    StepRecord step;
    step.timestamp = series[t].timestamp;
    step.hurst = hurst_raw;
    step.forecast = forecast;
    step.position = position;
    step.realized = values[t + static_cast<std::size_t>(h)] - values[t];
    step.strategy_return = position * step.realized;
    rep.steps.push_back(std::move(step));
  }

  rep.step_count = rep.steps.size();
  if (rep.step_count == 0) {
    throw std::runtime_error("no evaluable steps: every window failed");
  }

  std::vector<double> plus_ind(rep.step_count), returns(rep.step_count),
      losses(rep.step_count);
  std::size_t n_plus = 0, n_minus = 0, n_zero = 0;
  for (std::size_t i = 0; i < rep.step_count; ++i) {
    const StepRecord& s = rep.steps[i];
    if (s.position == 0) {
      ++n_zero;
    } else if (s.strategy_return >= 0.0) {
      ++n_plus;
    } else {
      ++n_minus;
    }
    plus_ind[i] = (s.position != 0 && s.strategy_return >= 0.0) ? 1.0 : 0.0;
    returns[i] = s.strategy_return;
    losses[i] = std::max(-s.strategy_return, 0.0);
  }
  const double count = static_cast<double>(rep.step_count);
  // The three shares must sum to exactly 1.0 in the order
  // (p_plus + p_minus) + p_zero; derive the last share as the exact
  // complement of the rounded others instead of dividing all three.
  rep.p_plus = static_cast<double>(n_plus) / count;
  if (n_plus == 0 && n_minus == 0) {
    rep.p_minus = 0.0;
    rep.p_zero = 1.0;
  } else if (n_zero == 0) {
    rep.p_minus = 1.0 - rep.p_plus;
    rep.p_zero = 0.0;
  } else {
    rep.p_minus = static_cast<double>(n_minus) / count;
    rep.p_zero = 1.0 - (rep.p_plus + rep.p_minus);
  }
  rep.p_plus_se = newey_west_se(plus_ind, h);
  double sum_ret = 0.0, sum_loss = 0.0;
  for (std::size_t i = 0; i < rep.step_count; ++i) {
    sum_ret += returns[i];
    sum_loss += losses[i];
  }
  rep.mean_return = sum_ret / count;
  rep.mean_loss = sum_loss / count;
  rep.mean_return_se = newey_west_se(returns, h);
  rep.mean_loss_se = newey_west_se(losses, h);
  rep.risk_adjusted = rep.mean_return - cfg.lambda * rep.mean_loss;
  return rep;
}

std::vector<ComparisonRow> compare_reports(const BacktestReport& left,
                                           const BacktestReport& right) {
  if (left.series_length != right.series_length ||
      left.first_timestamp != right.first_timestamp ||
      left.last_timestamp != right.last_timestamp) {
    throw std::invalid_argument("reports cover different series");
  }
  if (left.config.horizon_steps != right.config.horizon_steps) {
    throw std::invalid_argument("reports use different horizons");
  }
  const auto row = [](const char* label, double a, double b) {
    return ComparisonRow{label, a, b};
  };
  return {
      row("steps", static_cast<double>(left.step_count),
          static_cast<double>(right.step_count)),
      row("p_plus", left.p_plus, right.p_plus),
      row("p_minus", left.p_minus, right.p_minus),
      row("p_zero", left.p_zero, right.p_zero),
      row("mean_return", left.mean_return, right.mean_return),
      row("mean_loss", left.mean_loss, right.mean_loss),
      row("risk_adjusted", left.risk_adjusted, right.risk_adjusted),
  };
}

std::string report_to_json(const BacktestReport& report) {
  nlohmann::json cfg;
  cfg["horizon_steps"] = report.config.horizon_steps;
  cfg["n_lags"] = report.config.n_lags;
  cfg["lag_mode"] = lag_mode_name(report.config.lag_mode);
  cfg["threshold_mode"] = threshold_mode_name(report.config.threshold_mode);
  cfg["lambda"] = report.config.lambda;
  cfg["estimator"] = {{"window_T", report.config.estimator.window_T},
                      {"tau1", report.config.estimator.tau1},
                      {"tau2", report.config.estimator.tau2}};
  if (report.config.known_hurst) {
    cfg["known_hurst"] = *report.config.known_hurst;
    cfg["known_sigma"] = *report.config.known_sigma;
  }

  nlohmann::json j;
  j["config"] = cfg;
  j["series_length"] = report.series_length;
  j["first_timestamp"] = report.first_timestamp;
  j["last_timestamp"] = report.last_timestamp;
  j["step_count"] = report.step_count;
  j["skipped_steps"] = report.skipped_steps;
  j["p_plus"] = report.p_plus;
  j["p_minus"] = report.p_minus;
  j["p_zero"] = report.p_zero;
  j["p_plus_se"] = report.p_plus_se;
  j["mean_return"] = report.mean_return;
  j["mean_return_se"] = report.mean_return_se;
  j["mean_loss"] = report.mean_loss;
  j["mean_loss_se"] = report.mean_loss_se;
  j["risk_adjusted"] = report.risk_adjusted;
  j["overlapping_evaluation"] = report.overlapping_evaluation;
  return j.dump(2);
}

void write_steps_csv(const BacktestReport& report, std::ostream& out) {
  out << "timestamp,hurst,forecast,position,realized,strategy_return\n";
  std::ostringstream line;
  line.precision(17);
  for (const StepRecord& s : report.steps) {
    line.str("");
    line << s.timestamp << ',' << s.hurst << ',' << s.forecast << ','
         << s.position << ',' << s.realized << ',' << s.strategy_return
         << '\n';
    out << line.str();
  }
}

}  // namespace fbmf
