#include <algorithm>

#include "netdelay/error.hpp"
#include "netdelay/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netdelay::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

namespace {

std::ptrdiff_t block_count(std::size_t n) {
  return static_cast<std::ptrdiff_t>((n + kBlockSize - 1) / kBlockSize);
}

}  // namespace

void cdf_batch(const DelayDistribution& dist, std::span<const double> delays, Bytes w,
               std::span<double> out) {
  if (out.size() != delays.size())
    throw Error(ErrorCode::InvalidArgument, "output span size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(delays.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = cdf(dist, delays[i], w);
}

Moments centered_moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    throw Error(ErrorCode::InvalidArgument, "vectors must be non-empty and of equal length");
  const std::size_t n = x.size();
  const std::ptrdiff_t blocks = block_count(n);

  std::vector<double> px(blocks), py(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kBlockSize;
    const std::size_t hi = std::min(n, lo + kBlockSize);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      sx += x[i];
      sy += y[i];
    }
    px[b] = sx;
    py[b] = sy;
  }
  double sx = 0.0, sy = 0.0;
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    sx += px[b];
    sy += py[b];
  }
  Moments m{sx / static_cast<double>(n), sy / static_cast<double>(n), 0.0, 0.0, 0.0};

  std::vector<double> pxx(blocks), pyy(blocks), pxy(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kBlockSize;
    const std::size_t hi = std::min(n, lo + kBlockSize);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double dx = x[i] - m.mean_x;
      const double dy = y[i] - m.mean_y;
      sxx += dx * dx;
      syy += dy * dy;
      sxy += dx * dy;
    }
    pxx[b] = sxx;
    pyy[b] = syy;
    pxy[b] = sxy;
  }
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    m.sxx += pxx[b];
    m.syy += pyy[b];
    m.sxy += pxy[b];
  }
  return m;
}

std::vector<std::size_t> cell_counts(std::span<const double> samples,
                                     std::span<const double> edges) {
  const std::size_t cells = edges.size() + 1;
  const std::ptrdiff_t blocks = block_count(samples.size());
  std::vector<std::size_t> partial(static_cast<std::size_t>(blocks) * cells, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kBlockSize;
    const std::size_t hi = std::min(samples.size(), lo + kBlockSize);
    std::size_t* row = partial.data() + b * cells;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto k = std::lower_bound(edges.begin(), edges.end(), samples[i]) - edges.begin();
      ++row[k];
    }
  }
  std::vector<std::size_t> counts(cells, 0);
  for (std::ptrdiff_t b = 0; b < blocks; ++b)
    for (std::size_t k = 0; k < cells; ++k) counts[k] += partial[b * cells + k];
  return counts;
}

}  // namespace parallel
}  // namespace netdelay::kernels
