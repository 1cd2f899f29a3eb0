#include "netdelay/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace netdelay::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kSeriesLimit = 2.5;

// erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// All terms positive, so there is no cancellation for moderate x.
double erf_series(double x) {
  double term = x;
  double sum = x;
  const double two_x2 = 2.0 * x * x;
  for (int n = 0; n < 500; ++n) {
    term *= two_x2 / (2.0 * n + 3.0);
    sum += term;
    if (term < sum * kEps * 0.5) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x) * sum;
}

// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
double erfc_continued_fraction(double x) {
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = x + a / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x * x) / std::sqrt(std::numbers::pi) / f;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return -erf(-x);
  if (x < kSeriesLimit) return erf_series(x);
  if (x > 6.0) return 1.0;
  return 1.0 - erfc_continued_fraction(x);
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < kSeriesLimit) return 1.0 - erf_series(x);
  if (x > 27.3) return 0.0;
  return erfc_continued_fraction(x);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) return std::numeric_limits<double>::quiet_NaN();
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * erfc(-mid / std::numbers::sqrt2);
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double log_gamma_half(int twice_a) {
  // Gamma(k) = (k-1)!, Gamma(k + 1/2) = sqrt(pi) * prod_{j=1..k} (j - 1/2).
  double acc = 0.0;
  if (twice_a % 2 == 0) {
    for (int j = 2; j < twice_a / 2; ++j) acc += std::log(static_cast<double>(j));
  } else {
    acc = 0.5 * std::log(std::numbers::pi);
    for (int j = 1; j <= twice_a / 2; ++j) acc += std::log(j - 0.5);
  }
  return acc;
}

double regularized_gamma_p_half(int twice_a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double a = 0.5 * twice_a;
  const double log_prefix = -x + a * std::log(x) - log_gamma_half(twice_a);

  if (x < a + 1.0) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < 10000; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(log_prefix);
  }

  // Q(a, x) by the Legendre continued fraction, modified Lentz.
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

double chi_square_cdf(int df, double x) { return regularized_gamma_p_half(df, 0.5 * x); }

}  // namespace netdelay::special
