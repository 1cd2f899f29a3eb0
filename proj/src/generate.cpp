#include "netdelay/generate.hpp"

#include <cmath>

#include "netdelay/dist.hpp"
#include "netdelay/error.hpp"

namespace netdelay {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Xoshiro256StarStar::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256StarStar::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void PacketSchedule::push_back(ScheduleEntry entry) {
  if (entry.size < 1) throw Error(ErrorCode::InvalidArgument, "schedule sizes must be >= 1");
  if (!std::isfinite(entry.send_at))
    throw Error(ErrorCode::InvalidArgument, "send_at must be finite");
  if (!entries_.empty() && entry.send_at < entries_.back().send_at)
    throw Error(ErrorCode::InvalidArgument, "send_at must be non-decreasing");
  entries_.push_back(entry);
}

PacketSchedule PacketSchedule::uniform(std::size_t count, Bytes size, double interval) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  if (!(interval > 0.0)) throw Error(ErrorCode::InvalidArgument, "interval must be positive");
  PacketSchedule schedule;
  for (std::size_t i = 0; i < count; ++i)
    schedule.push_back({static_cast<double>(i) * interval, size});
  return schedule;
}

DelayGenerator::DelayGenerator(const GeneratorConfig& config)
    : config_(config), rng_(config.seed) {
  if (config.default_size < 1) throw Error(ErrorCode::InvalidArgument, "default size must be >= 1");
}

double DelayGenerator::sample_delay(Bytes w) {
  if (w < 1) throw Error(ErrorCode::InvalidArgument, "packet size must be >= 1");
  return quantile(config_.params, rng_.next_unit(), w);
}

DelayTrace generate_trace(const GeneratorConfig& config, const PacketSchedule& schedule) {
  if (schedule.empty()) throw Error(ErrorCode::EmptySchedule, "nothing to generate");
  DelayGenerator gen(config);
  std::vector<DelaySample> samples;
  samples.reserve(schedule.size());
  for (const auto& e : schedule.entries())
    samples.emplace_back(e.send_at, gen.sample_delay(e.size), e.size);
  return DelayTrace(std::move(samples), config.kind, "generator", "");
}

DelayTrace generate_uniform_stream(const GeneratorConfig& config, std::size_t count, Bytes size,
                                   double interval) {
  return generate_trace(config, PacketSchedule::uniform(count, size, interval));
}

}  // namespace netdelay
