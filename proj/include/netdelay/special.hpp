#pragma once

// Self-contained special functions. Absolute error of erf/erfc is below 1e-15
// on the real line; the chi-square CDF is accurate to ~1e-14.

namespace netdelay::special {

double erf(double x);
double erfc(double x);

// Standard normal quantile by bisection on erfc, |error| < 1e-12.
double normal_quantile(double p);

// log Gamma(n / 2) for integer n >= 1, exact up to rounding of the log sum.
double log_gamma_half(int twice_a);

// Regularized lower incomplete gamma P(n/2, x) for integer n >= 1, x >= 0.
double regularized_gamma_p_half(int twice_a, double x);

// CDF of the chi-square distribution with df degrees of freedom.
double chi_square_cdf(int df, double x);

}  // namespace netdelay::special
