#pragma once

#include "netdelay/model.hpp"

namespace netdelay {

enum class DistKind { Exponential, TruncatedNormal };

const char* to_string(DistKind kind) noexcept;

// Exponential uses lambda, TruncatedNormal uses sigma; both shift by d_min + W/C.
struct DelayDistribution {
  DistKind kind;
  PathParameters params;
};

// F(d, w) = 1 - exp(-lambda (d - d_min - w/C)) above the offset, 0 below.
double exp_cdf(const PathParameters& params, double d, Bytes w);

// Half-normal CDF erf((d - offset) / (sigma sqrt 2)) above the offset, 0 below.
// Uses the same size-dependent offset as the exponential model.
double trunc_normal_cdf(const PathParameters& params, double d, Bytes w);

// Generating function d = d_min + w/C - ln(1 - p)/lambda for 0 <= p < 1.
double quantile(const PathParameters& params, double p, Bytes w);

// Inverse of trunc_normal_cdf by bisection, |F(result) - p| <= 1e-10.
double trunc_normal_quantile(const PathParameters& params, double p, Bytes w);

double cdf(const DelayDistribution& dist, double d, Bytes w);
double quantile(const DelayDistribution& dist, double p, Bytes w);

}  // namespace netdelay
