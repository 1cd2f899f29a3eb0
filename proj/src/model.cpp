#include "netdelay/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "netdelay/error.hpp"

namespace netdelay {

const char* to_string(TraceKind kind) noexcept { return kind == TraceKind::RTT ? "RTT" : "OWD"; }

const char* to_string(DelayStatistic stat) noexcept {
  return stat == DelayStatistic::Mean ? "mean" : "min";
}

DelaySample::DelaySample(double sent_at, double delay, Bytes packet_size)
    : sent_at_(sent_at), delay_(delay), packet_size_(packet_size) {
  if (!std::isfinite(sent_at)) throw Error(ErrorCode::InvalidArgument, "sent_at must be finite");
  if (!(delay > 0.0) || !std::isfinite(delay))
    throw Error(ErrorCode::InvalidArgument, "delay must be positive and finite");
  if (packet_size < 1) throw Error(ErrorCode::InvalidArgument, "packet size must be >= 1 byte");
}

DelayTrace::DelayTrace(TraceKind kind, std::string source, std::string destination)
    : kind_(kind), source_(std::move(source)), destination_(std::move(destination)) {}

DelayTrace::DelayTrace(std::vector<DelaySample> samples, TraceKind kind, std::string source,
                       std::string destination)
    : DelayTrace(kind, std::move(source), std::move(destination)) {
  samples_.reserve(samples.size());
  for (const auto& s : samples) push_back(s);
}

void DelayTrace::push_back(const DelaySample& sample) {
  if (!samples_.empty() && sample.sent_at() < samples_.back().sent_at())
    throw Error(ErrorCode::InvalidArgument, "samples must be ordered by non-decreasing sent_at");
  samples_.push_back(sample);
}

void DelayTrace::set_labels(std::string source, std::string destination) {
  source_ = std::move(source);
  destination_ = std::move(destination);
}

std::vector<double> DelayTrace::delays() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.delay());
  return out;
}

std::optional<Bytes> DelayTrace::uniform_size() const {
  if (samples_.empty()) return std::nullopt;
  const Bytes w = samples_.front().packet_size();
  for (const auto& s : samples_)
    if (s.packet_size() != w) return std::nullopt;
  return w;
}

PathParameters::PathParameters(double d_min, double capacity, double sigma, double d_av,
                               Bytes packet_size_ref)
    : d_min_(d_min), capacity_(capacity), sigma_(sigma), d_av_(d_av),
      packet_size_ref_(packet_size_ref) {
  if (!(d_min > 0.0) || !std::isfinite(d_min))
    throw Error(ErrorCode::InvalidArgument, "d_min must be positive");
  if (!(capacity > 0.0)) throw Error(ErrorCode::InvalidArgument, "capacity must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorCode::NonPositiveScale, "sigma must be positive");
  if (packet_size_ref < 1) throw Error(ErrorCode::InvalidArgument, "reference size must be >= 1");
}

PathParameters PathParameters::from_rate(double d_min, double capacity, double lambda,
                                         Bytes packet_size_ref) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::NonPositiveScale, "lambda must be positive");
  const double sigma = 1.0 / lambda;
  return {d_min, capacity, sigma, fixed_delay(d_min, capacity, packet_size_ref) + sigma,
          packet_size_ref};
}

double fixed_delay(double d_min, double capacity, Bytes w) {
  return d_min + static_cast<double>(w) / capacity;
}

double fixed_delay(const PathParameters& params, Bytes w) {
  return fixed_delay(params.d_min(), params.capacity(), w);
}

namespace {

void require_nonempty(const DelayTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no samples");
}

Bytes require_uniform(const DelayTrace& trace) {
  require_nonempty(trace);
  auto w = trace.uniform_size();
  if (!w) throw Error(ErrorCode::SizeConflict, "trace mixes packet sizes");
  return *w;
}

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

double mean_delay(const DelayTrace& trace) {
  require_nonempty(trace);
  const auto d = trace.delays();
  return mean_of(d);
}

double min_delay(const DelayTrace& trace) {
  require_nonempty(trace);
  double m = trace[0].delay();
  for (const auto& s : trace.samples()) m = std::min(m, s.delay());
  return m;
}

double fixed_delay_estimate(const DelayTrace& trace, double percentile) {
  require_nonempty(trace);
  if (!(percentile >= 0.0 && percentile < 100.0))
    throw Error(ErrorCode::InvalidArgument, "percentile must lie in [0, 100)");
  if (percentile == 0.0) return min_delay(trace);
  auto d = trace.delays();
  const auto k = static_cast<std::size_t>(std::floor(percentile / 100.0 * (d.size() - 1)));
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
  return d[k];
}

double estimate_capacity(const DelayTrace& first, const DelayTrace& second,
                         DelayStatistic statistic) {
  const Bytes wa = require_uniform(first);
  const Bytes wb = require_uniform(second);
  if (wa == wb) throw Error(ErrorCode::SizeConflict, "both traces share one packet size");

  const auto stat = [statistic](const DelayTrace& t) {
    return statistic == DelayStatistic::Mean ? mean_delay(t) : min_delay(t);
  };
  const bool a_small = wa < wb;
  const DelayTrace& small = a_small ? first : second;
  const DelayTrace& large = a_small ? second : first;
  const double w1 = a_small ? wa : wb;
  const double w2 = a_small ? wb : wa;
  const double d1 = stat(small);
  const double d2 = stat(large);
  if (!(d2 > d1))
    throw Error(ErrorCode::NonPositiveSlope, "larger packets are not slower on average");
  return (w2 - w1) / (d2 - d1);
}

double estimate_d_min(Bytes w1, double d_fixed_1, Bytes w2, double d_fixed_2) {
  if (w1 == w2) throw Error(ErrorCode::DegenerateSizes, "packet sizes must differ");
  const double a = w1;
  const double b = w2;
  const double d_min = (b * d_fixed_1 - a * d_fixed_2) / (b - a);
  if (!(d_min > 0.0))
    throw Error(ErrorCode::NegativeResult, "extrapolated zero-size delay is not positive");
  return d_min;
}

std::vector<double> decompose(const DelayTrace& trace, const PathParameters& params) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& s : trace.samples()) out.push_back(s.delay() - fixed_delay(params, s.packet_size()));
  return out;
}

PathParameters fit_window(std::span<const double> delays, Bytes w, double d_min, double capacity) {
  if (delays.empty()) throw Error(ErrorCode::EmptyTrace, "no delays to fit");
  const double offset = fixed_delay(d_min, capacity, w);
  const double d_av = mean_of(delays);
  const double sigma = d_av - offset;
  if (!(sigma > 0.0))
    throw Error(ErrorCode::NonPositiveScale, "mean delay does not exceed the fixed delay");
  return {d_min, capacity, sigma, d_av, w};
}

PathParameters fit_parameters(const DelayTrace& trace, double d_min, double capacity,
                              const FitOptions& options) {
  if (trace.size() < std::max<std::size_t>(options.min_samples, 1))
    throw Error(ErrorCode::InsufficientSamples,
                "need at least " + std::to_string(options.min_samples) + " samples, got " +
                    std::to_string(trace.size()));
  const Bytes w = require_uniform(trace);
  const auto d = trace.delays();
  return fit_window(d, w, d_min, capacity);
}

}  // namespace netdelay
