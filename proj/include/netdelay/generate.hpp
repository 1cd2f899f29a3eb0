#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "netdelay/model.hpp"

namespace netdelay {

// xoshiro256** (Blackman & Vigna) seeded through splitmix64. Both algorithms
// are pinned here so streams are bit-identical across platforms.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed);

  std::uint64_t next();

  // 53 high bits mapped onto [0, 1); never returns 1.
  double next_unit();

 private:
  std::array<std::uint64_t, 4> s_;
};

struct GeneratorConfig {
  PathParameters params;
  std::uint64_t seed = 0;
  Bytes default_size = 100;
  TraceKind kind = TraceKind::OWD;
};

struct ScheduleEntry {
  double send_at;
  Bytes size;
};

class PacketSchedule {
 public:
  PacketSchedule() = default;

  void push_back(ScheduleEntry entry);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<ScheduleEntry>& entries() const noexcept { return entries_; }

  static PacketSchedule uniform(std::size_t count, Bytes size, double interval);

 private:
  std::vector<ScheduleEntry> entries_;
};

// Inverse-transform delay source. Single owner; not safe to share across threads.
class DelayGenerator {
 public:
  explicit DelayGenerator(const GeneratorConfig& config);

  double next_uniform() { return rng_.next_unit(); }
  double sample_delay(Bytes w);
  double sample_delay() { return sample_delay(config_.default_size); }

  const GeneratorConfig& config() const noexcept { return config_; }

 private:
  GeneratorConfig config_;
  Xoshiro256StarStar rng_;
};

DelayTrace generate_trace(const GeneratorConfig& config, const PacketSchedule& schedule);

DelayTrace generate_uniform_stream(const GeneratorConfig& config, std::size_t count, Bytes size,
                                   double interval);

}  // namespace netdelay
