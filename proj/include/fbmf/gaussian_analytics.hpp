#pragma once

#include <functional>

namespace fbmf {

// Settings for the adaptive Gauss-Kronrod quadrature. Half-infinite
// integrals of Gaussian-damped integrands are truncated at
// `truncation_width` standard deviations past the origin; with the
// default 12, the discarded tail is below 1e-30.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
  double truncation_width = 12.0;
};

// Standard normal density g and cumulative distribution N. The CDF is
// computed through erfc, accurate to ~1e-16 including the tails.
double normal_pdf(double x);
double normal_cdf(double x);

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [lo, hi].
// Subdivides the worst segment until the error estimate drops below
// cfg.abs_tol; throws std::runtime_error if cfg.max_subdivisions is
// exhausted first, std::invalid_argument on an invalid config.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& cfg = {});

// Closed form of the integral of N(alpha*x)*g(x) over [0, inf):
// 1/4 + arctan(alpha)/(2*pi).
double lemma_a1(double alpha);

// Degree-5 expansion around a=0 of the integral of N(alpha*x)*g(x)
// over [a, inf). Remainder is O(a^6); intended for small |a|.
double lemma_a2_taylor(double alpha, double a);

// Same integral evaluated by adaptive quadrature (valid for any a).
double lemma_a2_exact(double alpha, double a, const QuadratureConfig& cfg = {});

// Closed form of the integral of u*N(alpha*u)*g(u) over [a, inf):
// N(alpha*a)*g(a) + alpha/sqrt(2*pi*(1+alpha^2)) * (1 - N(a*sqrt(1+alpha^2))).
double lemma_a3(double alpha, double a);

}  // namespace fbmf
