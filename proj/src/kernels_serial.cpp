#include <algorithm>

#include "netdelay/error.hpp"
#include "netdelay/kernels.hpp"

namespace netdelay::kernels::serial {

void cdf_batch(const DelayDistribution& dist, std::span<const double> delays, Bytes w,
               std::span<double> out) {
  if (out.size() != delays.size())
    throw Error(ErrorCode::InvalidArgument, "output span size mismatch");
  for (std::size_t i = 0; i < delays.size(); ++i) out[i] = cdf(dist, delays[i], w);
}

Moments centered_moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    throw Error(ErrorCode::InvalidArgument, "vectors must be non-empty and of equal length");
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  Moments m{sx / n, sy / n, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - m.mean_x;
    const double dy = y[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

std::vector<std::size_t> cell_counts(std::span<const double> samples,
                                     std::span<const double> edges) {
  std::vector<std::size_t> counts(edges.size() + 1, 0);
  for (double x : samples) {
    const auto k = std::lower_bound(edges.begin(), edges.end(), x) - edges.begin();
    ++counts[static_cast<std::size_t>(k)];
  }
  return counts;
}

}  // namespace netdelay::kernels::serial
