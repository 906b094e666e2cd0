#pragma once

// Small derivative-free minimizers shared by the threshold and lag
// searches. Internal to the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace fbmf::detail {

// Golden-section minimization on [lo, hi]; f must be unimodal there for
// the bracket to be meaningful. Returns the abscissa of the minimum.
inline double golden_section_min(const std::function<double(double)>& f,
                                 double lo, double hi, double x_tol,
                                 int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

// Classic Nelder-Mead simplex minimization with standard coefficients.
// Deterministic; terminates on simplex size (x_tol, in the search
// coordinates) and value spread (f_tol), or max_iter.
inline NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, double init_step, double x_tol, double f_tol,
    int max_iter) {
  const std::size_t d = x0.size();
  NelderMeadResult out;
  std::vector<std::vector<double>> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (std::size_t i = 1; i <= d; ++i) pts[i][i - 1] += init_step;
  for (std::size_t i = 0; i <= d; ++i) {
    vals[i] = f(pts[i]);
    ++out.evaluations;
  }

  auto order = [&]() {
    std::vector<std::size_t> idx(d + 1);
    for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2(d + 1);
    std::vector<double> v2(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    order();
    double spread = 0.0, size = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      spread = std::max(spread, std::abs(vals[i] - vals[0]));
      for (std::size_t j = 0; j < d; ++j)
        size = std::max(size, std::abs(pts[i][j] - pts[0][j]));
    }
    if (size < x_tol && spread < f_tol) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[i][j];
    }
    for (std::size_t j = 0; j < d; ++j) centroid[j] /= static_cast<double>(d);

    auto blend = [&](double coef) {
      std::vector<double> x(d);
      for (std::size_t j = 0; j < d; ++j)
        x[j] = centroid[j] + coef * (pts[d][j] - centroid[j]);
      return x;
    };

    const std::vector<double> xr = blend(-1.0);  // reflection
    const double fr = f(xr);
    ++out.evaluations;
    if (fr < vals[0]) {
      const std::vector<double> xe = blend(-2.0);  // expansion
      const double fe = f(xe);
      ++out.evaluations;
      if (fe < fr) {
        pts[d] = xe;
        vals[d] = fe;
      } else {
        pts[d] = xr;
        vals[d] = fr;
      }
    } else if (fr < vals[d - 1]) {
      pts[d] = xr;
      vals[d] = fr;
    } else {
      const bool outside = fr < vals[d];
      const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      ++out.evaluations;
      if (fc < std::min(fr, vals[d])) {
        pts[d] = xc;
        vals[d] = fc;
      } else {  // shrink toward the best vertex
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 0; j < d; ++j)
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          vals[i] = f(pts[i]);
          ++out.evaluations;
        }
      }
    }
  }
  order();
  out.x = pts[0];
  out.value = vals[0];
  return out;
}

}  // namespace fbmf::detail
