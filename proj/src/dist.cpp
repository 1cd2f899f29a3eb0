#include "netdelay/dist.hpp"

#include <cmath>
#include <numbers>

#include "netdelay/error.hpp"
#include "netdelay/special.hpp"

namespace netdelay {

const char* to_string(DistKind kind) noexcept {
  return kind == DistKind::Exponential ? "exp" : "normal";
}

double exp_cdf(const PathParameters& params, double d, Bytes w) {
  const double x = d - fixed_delay(params, w);
  if (!(x >= 0.0)) return 0.0;
  return -std::expm1(-params.lambda() * x);
}

double trunc_normal_cdf(const PathParameters& params, double d, Bytes w) {
  const double x = d - fixed_delay(params, w);
  if (!(x >= 0.0)) return 0.0;
  return special::erf(x / (params.sigma() * std::numbers::sqrt2));
}

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p < 1.0))
    throw Error(ErrorCode::InvalidProbability, "probability must lie in [0, 1)");
}

}  // namespace

double quantile(const PathParameters& params, double p, Bytes w) {
  check_probability(p);
  return fixed_delay(params, w) - std::log1p(-p) / params.lambda();
}

double trunc_normal_quantile(const PathParameters& params, double p, Bytes w) {
  check_probability(p);
  const double offset = fixed_delay(params, w);
  if (p == 0.0) return offset;
  double lo = 0.0;
  double hi = params.sigma();
  while (special::erf(hi / (params.sigma() * std::numbers::sqrt2)) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = special::erf(mid / (params.sigma() * std::numbers::sqrt2));
    if (std::fabs(f - p) <= 1e-13) return offset + mid;
    (f < p ? lo : hi) = mid;
  }
  return offset + 0.5 * (lo + hi);
}

double cdf(const DelayDistribution& dist, double d, Bytes w) {
  return dist.kind == DistKind::Exponential ? exp_cdf(dist.params, d, w)
                                            : trunc_normal_cdf(dist.params, d, w);
}

double quantile(const DelayDistribution& dist, double p, Bytes w) {
  return dist.kind == DistKind::Exponential ? quantile(dist.params, p, w)
                                            : trunc_normal_quantile(dist.params, p, w);
}

}  // namespace netdelay
