#include "fbmf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbmf/accuracy.hpp"
#include "fbmf/backtest.hpp"
#include "fbmf/fbm_core.hpp"
#include "fbmf/hurst_estimation.hpp"
#include "fbmf/lag_optimizer.hpp"
#include "fbmf/montecarlo.hpp"
#include "fbmf/predictor.hpp"
#include "fbmf/strategy.hpp"

namespace fbmf {

namespace {

using nlohmann::json;

// Usage-level range checks surface as exit code 2, not module failures.
void check(bool ok, const std::string& msg) {
  if (!ok) throw CLI::ValidationError(msg);
}

// Human-mode numeric formatting: 6 significant digits.
std::string fmt6(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

// Full-precision formatting for data files (CSV path samples etc).
std::string fmt_full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void emit_text(const std::string& text, const std::string& path,
               std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << text;
}

LagStructure make_structure(double horizon, const std::vector<double>& lags) {
  check(!lags.empty(), "--lags requires at least one lag");
  std::vector<double> full(lags.size() + 1, 0.0);
  std::copy(lags.begin(), lags.end(), full.begin() + 1);
  return LagStructure{horizon, full};
}

void check_model_flags(double hurst, double sigma, double horizon) {
  check(hurst > 0.0 && hurst < 1.0, "--hurst must lie in (0, 1)");
  check(sigma > 0.0, "--sigma must be positive");
  check(horizon > 0.0, "--h must be positive");
}

json solution_json(const PredictorSolution& sol) {
  return json{{"hit_ratio", hit_ratio(sol)},
              {"a", sol.a},
              {"b", sol.b},
              {"mse", sol.mse},
              {"weights", sol.weights}};
}

// ---------------------------------------------------------------- rows
// One line of the closed-form vs Monte Carlo comparison.
struct VerifyRow {
  std::string metric;
  double theory = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  bool pass() const {
    const double diff = std::abs(theory - empirical);
    return std_error > 0.0 ? diff <= 3.0 * std_error : diff == 0.0;
  }
};

std::string verify_table(const std::vector<VerifyRow>& rows) {
  std::ostringstream s;
  s << std::left << std::setw(14) << "metric" << std::right << std::setw(14)
    << "theory" << std::setw(14) << "monte_carlo" << std::setw(13)
    << "std_error" << std::setw(7) << "pass" << '\n';
  bool all = true;
  for (const VerifyRow& r : rows) {
    all = all && r.pass();
    s << std::left << std::setw(14) << r.metric << std::right << std::setw(14)
      << fmt6(r.theory) << std::setw(14) << fmt6(r.empirical) << std::setw(13)
      << fmt6(r.std_error) << std::setw(7) << (r.pass() ? "yes" : "NO")
      << '\n';
  }
  s << "all rows within 3 standard errors: " << (all ? "yes" : "NO") << '\n';
  return s.str();
}

// ------------------------------------------------------------ simulate
struct SimulateOptions {
  double hurst = 0.5;
  double sigma = 1.0;
  double dt = 1.0;
  int steps = 1000;
  int paths = 1;
  std::uint64_t seed = 1;
  std::string output;
};

void run_simulate(const SimulateOptions& o, std::ostream& out) {
  check_model_flags(o.hurst, o.sigma, 1.0);
  check(o.steps >= 1, "--steps must be at least 1");
  check(o.paths >= 1, "--paths must be at least 1");
  check(o.dt > 0.0, "--dt must be positive");
  const FbmSpec spec{o.hurst, o.sigma};
  std::vector<double> times(static_cast<std::size_t>(o.steps) + 1);
  for (int i = 0; i <= o.steps; ++i) times[static_cast<std::size_t>(i)] = i * o.dt;
  const TimeGrid grid{times};
  const Eigen::MatrixXd m = simulate_path(spec, grid, o.seed, o.paths);

  std::ostringstream csv;
  if (o.paths == 1) {
    csv << "timestamp,value\n";
  } else {
    csv << "timestamp";
    for (int p = 1; p <= o.paths; ++p) csv << ",value_" << p;
    csv << '\n';
  }
  for (int i = 0; i <= o.steps; ++i) {
    csv << i;
    for (int p = 0; p < o.paths; ++p) csv << ',' << fmt_full(m(p, i));
    csv << '\n';
  }
  emit_text(csv.str(), o.output, out);
}

// ------------------------------------------------------------ hit-ratio
struct HitRatioOptions {
  double hurst = 0.5;
  double sigma = 1.0;
  double horizon = 1.0;
  std::vector<double> lags;
  bool as_json = false;
};

void run_hit_ratio(const HitRatioOptions& o, std::ostream& out) {
  check_model_flags(o.hurst, o.sigma, o.horizon);
  const PredictorSolution sol = solve_predictor(
      FbmSpec{o.hurst, o.sigma}, make_structure(o.horizon, o.lags));
  if (o.as_json) {
    out << solution_json(sol).dump(2) << '\n';
  } else {
    out << "hit_ratio = " << fmt6(hit_ratio(sol)) << '\n';
  }
}

// ---------------------------------------------------------- optimal-lags
struct OptimalLagsOptions {
  double hurst = 0.65;
  double horizon = 1.0;
  int n = 1;
};

void run_optimal_lags(const OptimalLagsOptions& o, std::ostream& out) {
  check(o.hurst > 0.0 && o.hurst < 1.0, "--hurst must lie in (0, 1)");
  check(o.horizon > 0.0, "--h must be positive");
  check(o.n >= 1 && o.n <= 8, "--n must be between 1 and 8");
  const LagOptimum opt =
      optimize_lags(FbmSpec{o.hurst, 1.0}, o.horizon, o.n);
  const json j{{"hurst", o.hurst},
               {"h", o.horizon},
               {"n", opt.n},
               {"lags", opt.lags},
               {"hit_ratio", opt.hit_ratio}};
  out << j.dump(2) << '\n';
}

// -------------------------------------------------------------- ternary
struct TernaryOptions {
  double hurst = 0.65;
  double sigma = 1.0;
  double horizon = 1.0;
  std::vector<double> lags;
  double theta = 0.0;
  double lambda = 0.0;
  std::string method = "exact";
  bool as_json = false;
};

void run_ternary(const TernaryOptions& o, std::ostream& out) {
  check_model_flags(o.hurst, o.sigma, o.horizon);
  check(o.theta >= 0.0, "--theta must be >= 0");
  const PredictorSolution sol = solve_predictor(
      FbmSpec{o.hurst, o.sigma}, make_structure(o.horizon, o.lags));
  const TernaryProbabilities tp =
      o.method == "taylor"
          ? ternary_probabilities_taylor(sol, o.theta)
          : ternary_probabilities_exact(sol, o.theta, QuadratureConfig{});
  const StrategyMetrics m = risk_adjusted_return(sol, o.theta, o.lambda);
  if (o.as_json) {
    const json j{{"theta", o.theta},
                 {"method", o.method},
                 {"p_plus", tp.p_plus},
                 {"p_minus", tp.p_minus},
                 {"p_zero", tp.p_zero},
                 {"expected_return", m.expected_return},
                 {"risk", m.risk},
                 {"lambda", o.lambda},
                 {"risk_adjusted", m.risk_adjusted}};
    out << j.dump(2) << '\n';
  } else {
    out << "p_plus = " << fmt6(tp.p_plus) << '\n'
        << "p_minus = " << fmt6(tp.p_minus) << '\n'
        << "p_zero = " << fmt6(tp.p_zero) << '\n'
        << "expected_return = " << fmt6(m.expected_return) << '\n'
        << "risk = " << fmt6(m.risk) << '\n'
        << "risk_adjusted = " << fmt6(m.risk_adjusted) << '\n';
  }
}

// --------------------------------------------------------- optimal-theta
struct OptimalThetaOptions {
  double hurst = 0.65;
  double sigma = 1.0;
  double horizon = 1.0;
  std::vector<double> lags;
  double lambda = 0.0;
  bool as_json = false;
};

void run_optimal_theta(const OptimalThetaOptions& o, std::ostream& out) {
  check_model_flags(o.hurst, o.sigma, o.horizon);
  const PredictorSolution sol = solve_predictor(
      FbmSpec{o.hurst, o.sigma}, make_structure(o.horizon, o.lags));
  const ThresholdOptimum opt = optimal_threshold(sol, o.lambda);
  if (o.as_json) {
    const json j{{"theta_star", opt.theta_star},
                 {"lambda", o.lambda},
                 {"expected_return", opt.metrics.expected_return},
                 {"risk", opt.metrics.risk},
                 {"risk_adjusted", opt.metrics.risk_adjusted}};
    out << j.dump(2) << '\n';
  } else {
    out << "theta_star = " << fmt6(opt.theta_star) << '\n'
        << "expected_return = " << fmt6(opt.metrics.expected_return) << '\n'
        << "risk = " << fmt6(opt.metrics.risk) << '\n'
        << "risk_adjusted = " << fmt6(opt.metrics.risk_adjusted) << '\n';
  }
}

// --------------------------------------------------------- estimate-hurst
struct EstimateHurstOptions {
  std::string input;
  int window = 504;
  int tau1 = 1;
  int tau2 = 2;
  std::string output;
};

void run_estimate_hurst(const EstimateHurstOptions& o, std::ostream& out) {
  check(o.window >= 8, "--window must be at least 8");
  check(o.tau1 >= 1 && o.tau2 >= 1, "--tau1/--tau2 must be >= 1");
  check(o.tau1 != o.tau2, "--tau1 and --tau2 must differ");
  const std::vector<SeriesRecord> records = load_series(o.input);
  std::vector<double> values(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) values[i] = records[i].value;
  const EstimatorConfig cfg{o.window, o.tau1, o.tau2};
  const std::vector<RollingPoint> points = rolling_hurst(values, cfg);

  std::ostringstream csv;
  csv << "timestamp,hurst,sigma\n";
  for (const RollingPoint& p : points) {
    csv << records[p.index].timestamp << ',' << fmt_full(p.estimate.hurst)
        << ',' << fmt_full(p.estimate.sigma) << '\n';
  }
  emit_text(csv.str(), o.output, out);
}

// A flat key=value file mirroring the backtest flags. CLI11 only
// processes config files attached to the top-level command, so the file
// is expanded into ordinary `--key value` arguments up front — skipping
// keys already present on the command line, which is exactly the
// "flags override the file" rule. Injected values then pass through the
// same CLI11 validation as typed flags, and unknown keys are rejected
// as unknown options.
void expand_backtest_config(std::vector<std::string>& args) {
  if (args.empty() || args[0] != "backtest") return;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return;
  std::ifstream file(path);
  if (!file) throw CLI::FileError::Missing(path);

  const auto given = [&args](const std::string& flag) {
    for (const std::string& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::size_t eq = line.find('=', first);
    if (eq == std::string::npos) {
      throw CLI::ConfigError(path + " line " + std::to_string(line_no) +
                             ": expected key=value");
    }
    std::string key = line.substr(first, eq - first);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t") + 1);
    if (key.empty()) {
      throw CLI::ConfigError(path + " line " + std::to_string(line_no) +
                             ": empty key");
    }
    const std::string flag = "--" + key;
    if (flag == "--config" || given(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
}

// -------------------------------------------------------------- backtest
struct BacktestOptions {
  std::string input;
  std::string config_path;
  int horizon = 1;
  int n = 1;
  LagMode lag_mode = LagMode::naive;
  ThresholdMode threshold_mode = ThresholdMode::zero;
  double lambda = 0.0;
  int window = 504;
  int tau1 = 1;
  int tau2 = 2;
  std::optional<double> known_hurst;
  std::optional<double> known_sigma;
  std::string steps_csv;
  std::string output;
};

void run_backtest_cmd(const BacktestOptions& o, std::ostream& out) {
  check(o.horizon >= 1, "--h must be at least 1 step");
  check(o.n >= 1 && o.n <= 8, "--n must be between 1 and 8");
  BacktestConfig cfg;
  cfg.horizon_steps = o.horizon;
  cfg.n_lags = o.n;
  cfg.lag_mode = o.lag_mode;
  cfg.threshold_mode = o.threshold_mode;
  cfg.lambda = o.lambda;
  cfg.estimator = EstimatorConfig{o.window, o.tau1, o.tau2};
  cfg.known_hurst = o.known_hurst;
  cfg.known_sigma = o.known_sigma;

  const std::vector<SeriesRecord> records = load_series(o.input);
  const BacktestReport report = run_backtest(records, cfg);
  emit_text(report_to_json(report) + "\n", o.output, out);
  if (!o.steps_csv.empty()) {
    std::ofstream file(o.steps_csv);
    if (!file) {
      throw std::runtime_error("cannot open output file: " + o.steps_csv);
    }
    write_steps_csv(report, file);
  }
}

// -------------------------------------------------------------- mc-verify
struct McVerifyOptions {
  double hurst = 0.65;
  double sigma = 1.0;
  double horizon = 1.0;
  int n = 1;
  std::vector<double> lags;  // optional override of the optimal set
  double theta_over_a = 1.0;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 20240904;
  bool as_json = false;
};

void run_mc_verify(const McVerifyOptions& o, std::ostream& out) {
  check_model_flags(o.hurst, o.sigma, o.horizon);
  check(o.n >= 1 && o.n <= 8, "--n must be between 1 and 8");
  check(o.trials >= 1000, "--trials must be at least 1000");
  check(o.theta_over_a >= 0.0, "--theta-over-a must be >= 0");
  const FbmSpec spec{o.hurst, o.sigma};

  std::vector<double> lags = o.lags;
  if (lags.empty()) {
    if (std::abs(o.hurst - 0.5) <= 1e-10) {
      for (int i = 1; i <= o.n; ++i) lags.push_back(i * o.horizon);
    } else {
      lags = optimize_lags(spec, o.horizon, o.n).lags;
    }
  }
  const LagStructure structure = make_structure(o.horizon, lags);
  const PredictorSolution sol = solve_predictor(spec, structure);

  std::vector<VerifyRow> rows;
  const McHitRatio hit = mc_hit_ratio(spec, structure, o.trials, o.seed);
  rows.push_back({"hit_ratio", hit_ratio(sol), hit.hit_ratio.value,
                  hit.hit_ratio.std_error});

  if (sol.a > 0.0) {
    const double theta = o.theta_over_a * sol.a;
    const TernaryProbabilities tp =
        ternary_probabilities_exact(sol, theta, QuadratureConfig{});
    const McTernary mc = mc_ternary(spec, structure, theta, o.trials, o.seed + 1);
    rows.push_back({"p_plus", tp.p_plus, mc.p_plus.value, mc.p_plus.std_error});
    rows.push_back(
        {"p_minus", tp.p_minus, mc.p_minus.value, mc.p_minus.std_error});
    rows.push_back({"p_zero", tp.p_zero, mc.p_zero.value, mc.p_zero.std_error});
    rows.push_back({"mean_return", expected_return(sol, theta),
                    mc.mean_return.value, mc.mean_return.std_error});
    rows.push_back({"mean_loss", risk(sol, theta), mc.mean_loss.value,
                    mc.mean_loss.std_error});
  }

  if (o.as_json) {
    json jrows = json::array();
    for (const VerifyRow& r : rows) {
      jrows.push_back({{"metric", r.metric},
                       {"theory", r.theory},
                       {"monte_carlo", r.empirical},
                       {"std_error", r.std_error},
                       {"pass", r.pass()}});
    }
    const json j{{"trials", o.trials},
                 {"seed", o.seed},
                 {"lags", lags},
                 {"rows", jrows}};
    out << j.dump(2) << '\n';
  } else {
    out << verify_table(rows);
  }
}

// ---------------------------------------------------------------- tables
struct TablesOptions {
  int which = 1;
  int max_n = 6;
  std::string output;
};

void run_tables(const TablesOptions& o, std::ostream& out) {
  check(o.which == 1 || o.which == 2, "--which must be 1 or 2");
  check(o.max_n >= 1 && o.max_n <= 8, "--max-n must be between 1 and 8");
  const double hurst = o.which == 1 ? 0.65 : 0.15;
  const FbmSpec spec{hurst, 1.0};

  std::ostringstream csv;
  csv << "n,hit_ratio_percent";
  for (int i = 1; i <= o.max_n; ++i) csv << ",delta_" << i;
  csv << '\n';
  csv << std::fixed;
  for (int n = 1; n <= o.max_n; ++n) {
    const LagOptimum opt = optimize_lags(spec, 1.0, n);
    csv << n << ',' << std::setprecision(4) << 100.0 * opt.hit_ratio;
    csv << std::setprecision(6);
    for (int i = 0; i < o.max_n; ++i) {
      csv << ',';
      if (i < n) csv << opt.lags[static_cast<std::size_t>(i)];
    }
    csv << '\n';
  }
  emit_text(csv.str(), o.output, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"fractional Brownian motion forecasting toolkit"};
  app.name("fbmf");
  app.require_subcommand(1);
  // Several subcommands take a `--h` horizon flag, so the short help
  // flag must not claim `-h`.
  app.set_help_flag("--help", "print help and exit");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Sample fBm paths to CSV");
  sim_cmd->add_option("--hurst", sim.hurst, "Hurst index in (0,1)")->required();
  sim_cmd->add_option("--sigma", sim.sigma, "volatility scale");
  sim_cmd->add_option("--steps", sim.steps, "number of increments");
  sim_cmd->add_option("--dt", sim.dt, "time step");
  sim_cmd->add_option("--paths", sim.paths, "number of paths");
  sim_cmd->add_option("--seed", sim.seed, "random seed");
  sim_cmd->add_option("--output", sim.output, "write CSV here instead of stdout");
  sim_cmd->callback([&] { run_simulate(sim, out); });

  HitRatioOptions hit;
  auto* hit_cmd =
      app.add_subcommand("hit-ratio", "Theoretical hit ratio of a lag set");
  hit_cmd->add_option("--hurst", hit.hurst, "Hurst index in (0,1)")->required();
  hit_cmd->add_option("--sigma", hit.sigma, "volatility scale");
  hit_cmd->add_option("--h", hit.horizon, "forecast horizon")->required();
  hit_cmd->add_option("--lags", hit.lags, "lags delta_1..delta_n")
      ->required()
      ->delimiter(',');
  hit_cmd->add_flag("--json", hit.as_json, "emit JSON at full precision");
  hit_cmd->callback([&] { run_hit_ratio(hit, out); });

  OptimalLagsOptions olags;
  auto* olags_cmd =
      app.add_subcommand("optimal-lags", "Hit-ratio-optimal lag set (JSON)");
  olags_cmd->add_option("--hurst", olags.hurst, "Hurst index in (0,1)")
      ->required();
  olags_cmd->add_option("--h", olags.horizon, "forecast horizon");
  olags_cmd->add_option("--n", olags.n, "number of lags")->required();
  olags_cmd->callback([&] { run_optimal_lags(olags, out); });

  TernaryOptions ter;
  auto* ter_cmd = app.add_subcommand(
      "ternary", "Long/flat/short outcome probabilities at a threshold");
  ter_cmd->add_option("--hurst", ter.hurst, "Hurst index in (0,1)")->required();
  ter_cmd->add_option("--sigma", ter.sigma, "volatility scale");
  ter_cmd->add_option("--h", ter.horizon, "forecast horizon");
  ter_cmd->add_option("--lags", ter.lags, "lags delta_1..delta_n")
      ->required()
      ->delimiter(',');
  ter_cmd->add_option("--theta", ter.theta, "trade threshold >= 0")->required();
  ter_cmd->add_option("--lambda", ter.lambda, "risk aversion");
  ter_cmd->add_option("--method", ter.method, "exact | taylor")
      ->check(CLI::IsMember({"exact", "taylor"}));
  ter_cmd->add_flag("--json", ter.as_json, "emit JSON at full precision");
  ter_cmd->callback([&] { run_ternary(ter, out); });

  OptimalThetaOptions oth;
  auto* oth_cmd = app.add_subcommand(
      "optimal-theta", "Risk-adjusted-return-maximizing threshold");
  oth_cmd->add_option("--hurst", oth.hurst, "Hurst index in (0,1)")->required();
  oth_cmd->add_option("--sigma", oth.sigma, "volatility scale");
  oth_cmd->add_option("--h", oth.horizon, "forecast horizon");
  oth_cmd->add_option("--lags", oth.lags, "lags delta_1..delta_n")
      ->required()
      ->delimiter(',');
  oth_cmd->add_option("--lambda", oth.lambda, "risk aversion")->required();
  oth_cmd->add_flag("--json", oth.as_json, "emit JSON at full precision");
  oth_cmd->callback([&] { run_optimal_theta(oth, out); });

  EstimateHurstOptions est;
  auto* est_cmd = app.add_subcommand(
      "estimate-hurst", "Rolling Hurst/volatility estimates from a CSV series");
  est_cmd->add_option("--input", est.input, "series CSV (timestamp,value)")
      ->required();
  est_cmd->add_option("--window", est.window, "window length in steps");
  est_cmd->add_option("--tau1", est.tau1, "first increment duration");
  est_cmd->add_option("--tau2", est.tau2, "second increment duration");
  est_cmd->add_option("--output", est.output, "write CSV here instead of stdout");
  est_cmd->callback([&] { run_estimate_hurst(est, out); });

  BacktestOptions bt;
  auto* bt_cmd = app.add_subcommand(
      "backtest", "Rolling estimate/forecast/trade pipeline over a CSV series");
  bt_cmd->add_option("--config", bt.config_path,
                     "flat key=value file mirroring the flags; flags override");
  bt_cmd->add_option("--input", bt.input, "series CSV (timestamp,value)")
      ->required();
  bt_cmd->add_option("--h", bt.horizon, "forecast horizon in steps")->required();
  bt_cmd->add_option("--n", bt.n, "number of lags");
  bt_cmd->add_option("--lag-mode", bt.lag_mode, "naive | optimal")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, LagMode>{{"naive", LagMode::naive},
                                         {"optimal", LagMode::optimal}}));
  bt_cmd->add_option("--threshold-mode", bt.threshold_mode, "zero | optimal")
      ->transform(CLI::CheckedTransformer(std::map<std::string, ThresholdMode>{
          {"zero", ThresholdMode::zero}, {"optimal", ThresholdMode::optimal}}));
  bt_cmd->add_option("--lambda", bt.lambda, "risk aversion");
  bt_cmd->add_option("--window", bt.window, "estimation window length");
  bt_cmd->add_option("--tau1", bt.tau1, "first increment duration");
  bt_cmd->add_option("--tau2", bt.tau2, "second increment duration");
  bt_cmd->add_option("--known-hurst", bt.known_hurst,
                     "bypass estimation with this Hurst index");
  bt_cmd->add_option("--known-sigma", bt.known_sigma,
                     "bypass estimation with this volatility");
  bt_cmd->add_option("--steps-csv", bt.steps_csv,
                     "write per-step records to this CSV file");
  bt_cmd->add_option("--output", bt.output,
                     "write report JSON here instead of stdout");
  bt_cmd->callback([&] { run_backtest_cmd(bt, out); });

  McVerifyOptions mcv;
  auto* mcv_cmd = app.add_subcommand(
      "mc-verify", "Closed forms vs Monte Carlo at matched lags");
  mcv_cmd->add_option("--hurst", mcv.hurst, "Hurst index in (0,1)")->required();
  mcv_cmd->add_option("--sigma", mcv.sigma, "volatility scale");
  mcv_cmd->add_option("--h", mcv.horizon, "forecast horizon");
  mcv_cmd->add_option("--n", mcv.n, "number of lags");
  mcv_cmd->add_option("--lags", mcv.lags,
                      "use these lags instead of the optimal set")
      ->delimiter(',');
  mcv_cmd->add_option("--theta-over-a", mcv.theta_over_a,
                      "ternary threshold in units of a");
  mcv_cmd->add_option("--trials", mcv.trials, "Monte Carlo trials");
  mcv_cmd->add_option("--seed", mcv.seed, "random seed");
  mcv_cmd->add_flag("--json", mcv.as_json, "emit JSON at full precision");
  mcv_cmd->callback([&] { run_mc_verify(mcv, out); });

  TablesOptions tab;
  auto* tab_cmd = app.add_subcommand(
      "tables", "Optimal lags and hit ratios across n (CSV)");
  tab_cmd->add_option("--which", tab.which,
                      "1: persistent benchmark (H=0.65); 2: rough (H=0.15)")
      ->required();
  tab_cmd->add_option("--max-n", tab.max_n, "largest lag count");
  tab_cmd->add_option("--output", tab.output, "write CSV here instead of stdout");
  tab_cmd->callback([&] { run_tables(tab, out); });

  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->set_help_flag("--help", "print help and exit");
  }

  try {
    std::vector<std::string> expanded = args;
    expand_backtest_config(expanded);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fbmf
