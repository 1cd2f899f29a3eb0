#include "netdelay/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "netdelay/error.hpp"
#include "netdelay/kernels.hpp"
#include "netdelay/special.hpp"

namespace netdelay {

EmpiricalCdf::EmpiricalCdf(std::vector<double> delays) : sorted_(std::move(delays)) {
  if (sorted_.empty()) throw Error(ErrorCode::EmptyTrace, "empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

std::vector<double> EmpiricalCdf::values_at_samples() const {
  const std::size_t n = sorted_.size();
  std::vector<double> out(n);
  std::size_t top = n;
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n && sorted_[i] != sorted_[i + 1]) top = i + 1;
    out[i] = static_cast<double>(top) / static_cast<double>(n);
  }
  return out;
}

EmpiricalCdf empirical_cdf(const DelayTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no samples");
  return EmpiricalCdf(trace.delays());
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "length mismatch");
  if (x.size() < 2) throw Error(ErrorCode::TooFewSamples, "need at least two points");
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  if (*xmin == *xmax || *ymin == *ymax)
    throw Error(ErrorCode::DegenerateVariance, "one of the vectors is constant");
  const auto m = kernels::parallel::centered_moments(x, y);
  const double r = m.sxy / std::sqrt(m.sxx * m.syy);
  return std::clamp(r, -1.0, 1.0);
}

double pearson_correlation(const EmpiricalCdf& ecdf, const DelayDistribution& dist, Bytes w) {
  const auto points = ecdf.sorted_delays();
  std::size_t n_distinct = points.empty() ? 0 : 1;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] != points[i - 1]) ++n_distinct;
  if (n_distinct < 3)
    throw Error(ErrorCode::TooFewSamples, "need at least three distinct delay values");

  const auto empirical = ecdf.values_at_samples();
  std::vector<double> theory(points.size());
  kernels::parallel::cdf_batch(dist, points, w, theory);
  return pearson(empirical, theory);
}

std::size_t sturges_cells(std::size_t n) {
  if (n < 10) throw Error(ErrorCode::TooFewSamples, "Sturges binning needs N >= 10");
  const double raw = 1.0 + 3.22 * std::log(static_cast<double>(n));
  return static_cast<std::size_t>(std::floor(raw + 0.5)) + 1;
}

ChiSquareCells chi_square_cells(std::span<const double> window, const DelayDistribution& dist,
                                Bytes w, std::size_t n_cells) {
  if (n_cells < 2) throw Error(ErrorCode::InvalidArgument, "need at least two cells");
  if (window.size() < n_cells)
    throw Error(ErrorCode::TooFewSamples, "window shorter than the number of cells");

  const double n = static_cast<double>(window.size());
  ChiSquareCells cells;
  cells.edges.reserve(n_cells - 1);
  for (std::size_t k = 1; k < n_cells; ++k)
    cells.edges.push_back(quantile(dist, static_cast<double>(k) / static_cast<double>(n_cells), w));

  cells.expected.reserve(n_cells);
  double lower = 0.0;
  for (std::size_t k = 0; k < n_cells; ++k) {
    const double upper = k + 1 < n_cells ? cdf(dist, cells.edges[k], w) : 1.0;
    const double e = n * (upper - lower);
    if (!(e > 0.0)) throw Error(ErrorCode::ZeroExpected, "cell " + std::to_string(k) + " has zero expected count");
    cells.expected.push_back(e);
    lower = upper;
  }
  cells.observed = kernels::parallel::cell_counts(window, cells.edges);
  return cells;
}

double chi_square_statistic(std::span<const double> window, const DelayDistribution& dist,
                            Bytes w, std::size_t n_cells) {
  const auto cells = chi_square_cells(window, dist, w, n_cells);
  double t = 0.0;
  for (std::size_t k = 0; k < n_cells; ++k) {
    const double diff = static_cast<double>(cells.observed[k]) - cells.expected[k];
    t += diff * diff / cells.expected[k];
  }
  return t;
}

double chi_square_quantile(int df, double p) {
  if (df < 1) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidProbability, "p must lie in (0, 1)");

  // Wilson-Hilferty start, then bracket and bisect on the exact CDF.
  const double h = 2.0 / (9.0 * df);
  const double z = special::normal_quantile(p);
  double guess = df * std::pow(std::max(1.0 - h + z * std::sqrt(h), 1e-3), 3.0);
  guess = std::max(guess, 1e-12);

  double lo = guess;
  double hi = guess;
  while (special::chi_square_cdf(df, lo) > p && lo > 1e-300) lo *= 0.5;
  while (special::chi_square_cdf(df, hi) < p) hi *= 2.0;
  for (int i = 0; i < 300 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (special::chi_square_cdf(df, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GofResult gof_test(std::span<const double> window, DistKind kind, Bytes w,
                   const GofOptions& options) {
  if (window.size() < 10) throw Error(ErrorCode::TooFewSamples, "goodness of fit needs N >= 10");
  if (!(options.significance > 0.0 && options.significance < 1.0))
    throw Error(ErrorCode::InvalidProbability, "significance must lie in (0, 1)");

  const PathParameters params = [&] {
    if (options.fixed_params) return *options.fixed_params;
    const double d_min = options.d_min.value_or(*std::min_element(window.begin(), window.end()));
    return fit_window(window, w, d_min, options.capacity);
  }();

  GofResult r;
  r.n_samples = window.size();
  r.n_cells = sturges_cells(window.size());
  r.dist_kind = kind;
  r.statistic = chi_square_statistic(window, DelayDistribution{kind, params}, w, r.n_cells);
  r.threshold = chi_square_quantile(static_cast<int>(r.n_cells) - 1, options.significance);
  r.accepted = r.statistic < r.threshold;
  return r;
}

WindowScan window_scan(const DelayTrace& trace, std::span<const std::size_t> window_sizes,
                       DistKind kind, const WindowScanOptions& options) {
  WindowScan scan;
  scan.window_sizes.assign(window_sizes.begin(), window_sizes.end());
  if (window_sizes.empty()) return scan;

  const std::size_t longest = *std::max_element(window_sizes.begin(), window_sizes.end());
  if (trace.size() < longest)
    throw Error(ErrorCode::TraceTooShort, "trace has " + std::to_string(trace.size()) +
                                              " samples, window needs " + std::to_string(longest));
  const auto size = trace.uniform_size();
  if (!size) throw Error(ErrorCode::SizeConflict, "window scan needs a single packet size");
  const Bytes w = *size;
  const auto delays = trace.delays();

  GofOptions gof;
  gof.significance = options.significance;
  gof.d_min = options.d_min.value_or(*std::min_element(delays.begin(), delays.end()));
  gof.capacity = options.capacity;
  if (options.parameters == ParameterSource::TraceGlobal)
    gof.fixed_params = fit_window(delays, w, *gof.d_min, gof.capacity);

  // Flatten (size, window index) into one task list so both modes share a
  // single parallel loop; each task owns its output slot.
  struct Task {
    std::size_t size_index;
    std::size_t offset;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < window_sizes.size(); ++i) {
    const std::size_t len = window_sizes[i];
    const std::size_t count = options.mode == WindowMode::Leading ? 1 : delays.size() / len;
    for (std::size_t k = 0; k < count; ++k) tasks.push_back({i, k * len});
  }

  std::vector<GofResult> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  const auto n_tasks = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < n_tasks; ++t) {
    try {
      const auto& task = tasks[t];
      const std::span<const double> window(delays.data() + task.offset,
                                           window_sizes[task.size_index]);
      results[t] = gof_test(window, kind, w, gof);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  scan.results.resize(window_sizes.size());
  std::vector<std::size_t> accepted(window_sizes.size(), 0), total(window_sizes.size(), 0);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto i = tasks[t].size_index;
    if (tasks[t].offset == 0) scan.results[i] = results[t];
    ++total[i];
    if (results[t].accepted) ++accepted[i];
  }
  if (options.mode == WindowMode::AllDisjoint) {
    for (std::size_t i = 0; i < window_sizes.size(); ++i)
      scan.acceptance_fraction.push_back(static_cast<double>(accepted[i]) /
                                         static_cast<double>(total[i]));
  }
  return scan;
}

}  // namespace netdelay
