#include "fbmf/fbm_core.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "fbmf/threads.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbmf {

namespace {

constexpr std::size_t kCirculantThreshold = 128;  // increments

double pow2h(double x, double two_h) { return std::pow(std::abs(x), two_h); }

// Augment the grid with the origin if absent; returns the index offset
// of the first requested time inside the augmented grid (0 or 1).
std::vector<double> with_origin(const std::vector<double>& times,
                                bool* prepended) {
  *prepended = !(times.front() == 0.0);
  if (!*prepended) return times;
  std::vector<double> full;
  full.reserve(times.size() + 1);
  full.push_back(0.0);
  full.insert(full.end(), times.begin(), times.end());
  return full;
}

bool is_uniform(const std::vector<double>& times, double* dt) {
  const std::size_t m = times.size() - 1;
  if (m == 0) return false;
  const double step = (times.back() - times.front()) / static_cast<double>(m);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (std::abs(times[i + 1] - times[i] - step) > 1e-9 * step) return false;
  }
  *dt = step;
  return true;
}

Eigen::MatrixXd cholesky_with_jitter(const FbmSpec& spec,
                                     Eigen::MatrixXd cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  // One bounded rescue for borderline matrices, then fail hard.
  const double jitter =
      1e-12 * spec.sigma * spec.sigma * cov.diagonal().maxCoeff();
  cov.diagonal().array() += jitter;
  llt.compute(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  throw std::runtime_error(
      "simulate_path: increment covariance is numerically "
      "non-positive-definite (degenerate time grid)");
}

// Exact sampling of stationary increments on a uniform grid through
// circulant embedding of the increment autocovariance. The embedding
// eigenvalues are provably non-negative for these increments; tiny
// negative rounding noise is clamped, anything worse aborts.
struct CirculantSampler {
  std::size_t n;  // increments per path
  std::size_t m;  // embedding size, 2n
  std::vector<double> sqrt_lambda;
  fftw_plan plan;
  fftw_complex* in;
  fftw_complex* out;

  CirculantSampler(const FbmSpec& spec, double dt, std::size_t n_)
      : n(n_), m(2 * n_) {
    in = fftw_alloc_complex(m);
    out = fftw_alloc_complex(m);
    plan = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_FORWARD,
                            FFTW_ESTIMATE);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t k = std::min(j, m - j);
      in[j][0] = fgn_autocovariance(spec, dt, static_cast<long>(k));
      in[j][1] = 0.0;
    }
    fftw_execute(plan);
    sqrt_lambda.resize(m);
    double max_ev = 0.0;
    for (std::size_t j = 0; j < m; ++j) max_ev = std::max(max_ev, out[j][0]);
    for (std::size_t j = 0; j < m; ++j) {
      double ev = out[j][0];
      if (ev < 0.0) {
        if (ev < -1e-8 * max_ev)
          throw std::runtime_error(
              "simulate_path: circulant embedding produced a significantly "
              "negative eigenvalue");
        ev = 0.0;
      }
      sqrt_lambda[j] = std::sqrt(ev);
    }
  }
  ~CirculantSampler() {
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  CirculantSampler(const CirculantSampler&) = delete;
  CirculantSampler& operator=(const CirculantSampler&) = delete;

  // Fills `increments` (length n) for one path; buffers are caller-owned
  // scratch of size m so paths can be generated concurrently with the
  // shared plan.
  void sample(std::mt19937_64& rng, fftw_complex* buf_in, fftw_complex* buf_out,
              double* increments) const {
    std::normal_distribution<double> normal;
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
    const double z0 = normal(rng);
    const double zn = normal(rng);
    buf_in[0][0] = sqrt_lambda[0] * z0;
    buf_in[0][1] = 0.0;
    buf_in[n][0] = sqrt_lambda[n] * zn;
    buf_in[n][1] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double a = normal(rng);
      const double b = normal(rng);
      const double s = sqrt_lambda[k] * M_SQRT1_2;
      buf_in[k][0] = s * a;
      buf_in[k][1] = s * b;
      buf_in[m - k][0] = s * a;
      buf_in[m - k][1] = -s * b;
    }
    fftw_execute_dft(plan, buf_in, buf_out);
    for (std::size_t j = 0; j < n; ++j) increments[j] = buf_out[j][0] * inv_sqrt_m;
  }
};

}  // namespace

FbmSpec::FbmSpec(double hurst_, double sigma_) : hurst(hurst_), sigma(sigma_) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("FbmSpec: hurst must lie in (0,1)");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("FbmSpec: sigma must be positive and finite");
}

TimeGrid::TimeGrid(std::vector<double> times_) : times(std::move(times_)) {
  if (times.empty()) throw std::invalid_argument("TimeGrid: empty grid");
  if (!(times.front() >= 0.0))
    throw std::invalid_argument("TimeGrid: times must be non-negative");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      throw std::invalid_argument("TimeGrid: times must be finite");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("TimeGrid: times must be strictly increasing");
  }
}

double process_covariance(const FbmSpec& spec, double t, double s) {
  const double two_h = 2.0 * spec.hurst;
  return 0.5 * spec.sigma * spec.sigma *
         (pow2h(t, two_h) + pow2h(s, two_h) - pow2h(t - s, two_h));
}

double increment_covariance(const FbmSpec& spec, double s, double t, double u,
                            double v) {
  if (s > t || u > v)
    throw std::invalid_argument(
        "increment_covariance: intervals must satisfy s <= t and u <= v");
  const double two_h = 2.0 * spec.hurst;
  return 0.5 * spec.sigma * spec.sigma *
         (pow2h(u - t, two_h) + pow2h(v - s, two_h) - pow2h(v - t, two_h) -
          pow2h(u - s, two_h));
}

double fgn_autocovariance(const FbmSpec& spec, double dt, long k) {
  const double two_h = 2.0 * spec.hurst;
  const double kk = static_cast<double>(std::labs(k));
  return 0.5 * spec.sigma * spec.sigma * std::pow(dt, two_h) *
         (std::pow(kk + 1.0, two_h) + pow2h(kk - 1.0, two_h) -
          2.0 * std::pow(kk, two_h));
}

Eigen::MatrixXd increment_covariance_matrix(const FbmSpec& spec,
                                            const std::vector<double>& times) {
  const std::size_t m = times.size() - 1;
  Eigen::MatrixXd cov(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double c = increment_covariance(spec, times[i], times[i + 1],
                                            times[j], times[j + 1]);
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
      cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
    }
  }
  return cov;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Eigen::MatrixXd simulate_path(const FbmSpec& spec, const TimeGrid& grid,
                              std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("simulate_path: count must be >= 1");
  bool prepended = false;
  const std::vector<double> full = with_origin(grid.times, &prepended);
  const std::size_t offset = prepended ? 1 : 0;
  const std::size_t n_incr = full.size() - 1;
  const std::size_t n_out = grid.size();
  Eigen::MatrixXd paths(count, static_cast<Eigen::Index>(n_out));

  if (n_incr == 0) {  // grid == {0}
    paths.setZero();
    return paths;
  }

  const int threads = thread_budget();
  double dt = 0.0;
  if (n_incr >= kCirculantThreshold && is_uniform(full, &dt)) {
    CirculantSampler sampler(spec, dt, n_incr);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
      fftw_complex* buf_in = fftw_alloc_complex(sampler.m);
      fftw_complex* buf_out = fftw_alloc_complex(sampler.m);
      std::vector<double> incr(n_incr);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
      for (int p = 0; p < count; ++p) {
        std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(p)));
        sampler.sample(rng, buf_in, buf_out, incr.data());
        double x = 0.0;
        std::size_t col = 0;
        if (offset == 0) paths(p, static_cast<Eigen::Index>(col++)) = 0.0;
        for (std::size_t j = 0; j < n_incr; ++j) {
          x += incr[j];
          paths(p, static_cast<Eigen::Index>(col++)) = x;
        }
      }
      fftw_free(buf_in);
      fftw_free(buf_out);
    }
    return paths;
  }

  const Eigen::MatrixXd chol =
      cholesky_with_jitter(spec, increment_covariance_matrix(spec, full));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (int p = 0; p < count; ++p) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(p)));
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(static_cast<Eigen::Index>(n_incr));
    for (std::size_t j = 0; j < n_incr; ++j)
      z(static_cast<Eigen::Index>(j)) = normal(rng);
    const Eigen::VectorXd incr = chol * z;
    double x = 0.0;
    std::size_t col = 0;
    if (offset == 0) paths(p, static_cast<Eigen::Index>(col++)) = 0.0;
    for (std::size_t j = 0; j < n_incr; ++j) {
      x += incr(static_cast<Eigen::Index>(j));
      paths(p, static_cast<Eigen::Index>(col++)) = x;
    }
  }
  return paths;
}

}  // namespace fbmf
