#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "netdelay/dist.hpp"
#include "netdelay/model.hpp"

namespace netdelay {

// Step function F(x) = #{samples <= x} / n over the sorted delays.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> delays);

  double operator()(double x) const;
  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> sorted_delays() const noexcept { return sorted_; }

  // F evaluated at each sorted sample point (ties share the value at their top).
  std::vector<double> values_at_samples() const;

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(const DelayTrace& trace);

// Pearson r of two equal-length vectors. Throws DegenerateVariance when either
// is constant.
double pearson(std::span<const double> x, std::span<const double> y);

// r between the empirical CDF and the model CDF at the sorted sample points
// (K_exp or K_nor depending on the model kind).
double pearson_correlation(const EmpiricalCdf& ecdf, const DelayDistribution& dist, Bytes w);

// Sturges' rule as round_half_up(1 + 3.22 ln N) + 1.
std::size_t sturges_cells(std::size_t n);

struct ChiSquareCells {
  std::vector<double> edges;  // n_cells - 1 interior edges at model quantiles
  std::vector<std::size_t> observed;
  std::vector<double> expected;
};

// Equal-probability cells under the model: the edges sit at quantiles
// k / n_cells, the outer cells extend to -inf and +inf.
ChiSquareCells chi_square_cells(std::span<const double> window, const DelayDistribution& dist,
                                Bytes w, std::size_t n_cells);

double chi_square_statistic(std::span<const double> window, const DelayDistribution& dist,
                            Bytes w, std::size_t n_cells);

double chi_square_quantile(int df, double p);

struct GofResult {
  std::size_t n_samples = 0;
  std::size_t n_cells = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool accepted = false;
  DistKind dist_kind = DistKind::Exponential;

  friend bool operator==(const GofResult&, const GofResult&) = default;
};

struct GofOptions {
  double significance = 0.95;
  // Trace-level anchor. Without d_min the window minimum is used.
  std::optional<double> d_min;
  double capacity = kInfiniteCapacity;
  // When set, these parameters are used as-is instead of refitting sigma on
  // the window.
  std::optional<PathParameters> fixed_params;
};

GofResult gof_test(std::span<const double> window, DistKind kind, Bytes w,
                   const GofOptions& options = {});

inline constexpr std::array<std::size_t, 7> kDefaultWindowSizes{50, 100, 200, 250, 500, 1000, 2000};

enum class WindowMode { Leading, AllDisjoint };
enum class ParameterSource { PerWindow, TraceGlobal };

struct WindowScanOptions {
  double significance = 0.95;
  std::optional<double> d_min;
  double capacity = kInfiniteCapacity;
  WindowMode mode = WindowMode::Leading;
  ParameterSource parameters = ParameterSource::PerWindow;
};

struct WindowScan {
  std::vector<std::size_t> window_sizes;
  // Leading window result per size.
  std::vector<GofResult> results;
  // Fraction of disjoint windows accepted per size (AllDisjoint mode only).
  std::vector<double> acceptance_fraction;

  friend bool operator==(const WindowScan&, const WindowScan&) = default;
};

WindowScan window_scan(const DelayTrace& trace, std::span<const std::size_t> window_sizes,
                       DistKind kind, const WindowScanOptions& options = {});

}  // namespace netdelay
