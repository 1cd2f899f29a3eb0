#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "netdelay/model.hpp"
#include "netdelay/stats.hpp"

namespace netdelay {

inline constexpr int kReportFormatVersion = 1;

struct InputProvenance {
  std::string path;
  std::size_t samples = 0;
  Bytes packet_size = 0;
  double first_ts = 0.0;
  double last_ts = 0.0;

  friend bool operator==(const InputProvenance&, const InputProvenance&) = default;
};

struct FitReport {
  PathParameters params;
  TraceKind kind = TraceKind::RTT;
  DelayStatistic capacity_statistic = DelayStatistic::Mean;
  double k_nor = 0.0;
  double k_exp = 0.0;
  WindowScan windows_exp{};
  WindowScan windows_normal{};
  std::vector<InputProvenance> inputs{};

  friend bool operator==(const FitReport&, const FitReport&) = default;
};

// Text report: a '#'-prefixed human summary (milliseconds) followed by
// `key = value` lines in SI units. Doubles are written in shortest
// round-trip form, so parse_report(serialize_report(r)) == r.
std::string serialize_report(const FitReport& report);
FitReport parse_report(std::string_view text);

}  // namespace netdelay
