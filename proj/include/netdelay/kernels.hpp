#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netdelay/dist.hpp"

// Data-parallel inner loops. `serial` is the reference implementation kept for
// testing and benchmarking; `parallel` is what the library calls.
//
// Parallel reductions split the input into fixed-size blocks whose partial
// results are combined in block order, so results do not depend on the number
// of threads.

namespace netdelay::kernels {

inline constexpr std::size_t kBlockSize = 4096;

struct Moments {
  double mean_x;
  double mean_y;
  double sxx;  // sum (x - mean_x)^2
  double syy;
  double sxy;
};

namespace serial {

void cdf_batch(const DelayDistribution& dist, std::span<const double> delays, Bytes w,
               std::span<double> out);

Moments centered_moments(std::span<const double> x, std::span<const double> y);

// counts[k] = #{ x : edges[k-1] < x <= edges[k] } with edges[-1] = -inf and
// edges[n] = +inf; returns edges.size() + 1 counts. edges must be sorted.
std::vector<std::size_t> cell_counts(std::span<const double> samples,
                                     std::span<const double> edges);

}  // namespace serial

namespace parallel {

void cdf_batch(const DelayDistribution& dist, std::span<const double> delays, Bytes w,
               std::span<double> out);

Moments centered_moments(std::span<const double> x, std::span<const double> y);

std::vector<std::size_t> cell_counts(std::span<const double> samples,
                                     std::span<const double> edges);

}  // namespace parallel

// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace netdelay::kernels
