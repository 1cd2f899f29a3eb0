#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netdelay {

using Bytes = std::uint32_t;

inline constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

enum class TraceKind { RTT, OWD };

const char* to_string(TraceKind kind) noexcept;

// One measured delay observation. Construction enforces delay > 0 and size >= 1.
class DelaySample {
 public:
  DelaySample(double sent_at, double delay, Bytes packet_size);

  double sent_at() const noexcept { return sent_at_; }
  double delay() const noexcept { return delay_; }
  Bytes packet_size() const noexcept { return packet_size_; }

  friend bool operator==(const DelaySample&, const DelaySample&) = default;

 private:
  double sent_at_;
  double delay_;
  Bytes packet_size_;
};

// Ordered sample collection for one path. Samples are kept in non-decreasing
// sent_at order; push_back rejects anything that would break it.
class DelayTrace {
 public:
  DelayTrace() = default;
  DelayTrace(TraceKind kind, std::string source = {}, std::string destination = {});
  DelayTrace(std::vector<DelaySample> samples, TraceKind kind, std::string source = {},
             std::string destination = {});

  void push_back(const DelaySample& sample);

  std::span<const DelaySample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const DelaySample& operator[](std::size_t i) const { return samples_[i]; }

  TraceKind kind() const noexcept { return kind_; }
  const std::string& source() const noexcept { return source_; }
  const std::string& destination() const noexcept { return destination_; }
  void set_labels(std::string source, std::string destination);

  std::vector<double> delays() const;
  // The single packet size shared by every sample, or nullopt when mixed or empty.
  std::optional<Bytes> uniform_size() const;

  friend bool operator==(const DelayTrace&, const DelayTrace&) = default;

 private:
  std::vector<DelaySample> samples_;
  TraceKind kind_ = TraceKind::RTT;
  std::string source_;
  std::string destination_;
};

// Fitted two-component path model: fixed part d_min + W/capacity plus an
// exponential (rate lambda) or half-normal (scale sigma) variable part.
// sigma is stored; lambda is always derived from it.
class PathParameters {
 public:
  PathParameters(double d_min, double capacity, double sigma, double d_av, Bytes packet_size_ref);

  // Builds parameters from a rate; d_av is implied for the reference size.
  static PathParameters from_rate(double d_min, double capacity, double lambda,
                                  Bytes packet_size_ref);

  double d_min() const noexcept { return d_min_; }
  double capacity() const noexcept { return capacity_; }
  double sigma() const noexcept { return sigma_; }
  double lambda() const noexcept { return 1.0 / sigma_; }
  double d_av() const noexcept { return d_av_; }
  Bytes packet_size_ref() const noexcept { return packet_size_ref_; }
  bool has_capacity() const noexcept { return capacity_ != kInfiniteCapacity; }

  friend bool operator==(const PathParameters&, const PathParameters&) = default;

 private:
  double d_min_;
  double capacity_;
  double sigma_;
  double d_av_;
  Bytes packet_size_ref_;
};

// D_fixed(W) = d_min + W / capacity. An infinite capacity contributes nothing.
double fixed_delay(const PathParameters& params, Bytes w);
double fixed_delay(double d_min, double capacity, Bytes w);

enum class DelayStatistic { Mean, Minimum };

const char* to_string(DelayStatistic stat) noexcept;

double mean_delay(const DelayTrace& trace);
double min_delay(const DelayTrace& trace);

// Lower-percentile estimate of D_fixed(W) for one trace. percentile = 0 is the
// plain minimum; larger values trade bias for outlier resistance.
double fixed_delay_estimate(const DelayTrace& trace, double percentile = 0.0);

// C = (W2 - W1) / (D2 - D1), with D_i the chosen per-trace statistic. The
// traces may be passed in either order.
double estimate_capacity(const DelayTrace& first, const DelayTrace& second,
                         DelayStatistic statistic = DelayStatistic::Mean);

// Zero-size intercept of the line through (w1, d_fixed_1) and (w2, d_fixed_2).
double estimate_d_min(Bytes w1, double d_fixed_1, Bytes w2, double d_fixed_2);

// d_var = D - D_fixed(W) per sample. Negative values from noise are kept.
std::vector<double> decompose(const DelayTrace& trace, const PathParameters& params);

struct FitOptions {
  std::size_t min_samples = 20;
};

// sigma = mean(D) - (d_min + W/capacity), lambda = 1/sigma.
PathParameters fit_parameters(const DelayTrace& trace, double d_min, double capacity,
                              const FitOptions& options = {});

// Same fit over a bare window of delays that all share packet size w.
PathParameters fit_window(std::span<const double> delays, Bytes w, double d_min, double capacity);

}  // namespace netdelay
