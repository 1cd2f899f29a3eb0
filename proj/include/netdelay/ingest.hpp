#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "netdelay/model.hpp"

namespace netdelay {

enum class TraceFormat { PingLinux, PingWindows, CanonicalCsv };

const char* to_string(TraceFormat format) noexcept;

inline constexpr std::string_view kCsvHeader = "ts,delay_us,size_bytes,kind";

// Picks the input format. Text holding reply lines of both ping dialects is
// rejected as ambiguous (UnrecognizedFormat).
TraceFormat detect_format(std::string_view text);

struct PingOptions {
  std::optional<Bytes> assumed_size;
  // Spacing used to synthesize sent_at, ping output carries no timestamps.
  double interval = 1.0;
};

struct PingParseResult {
  DelayTrace trace;
  TraceFormat dialect = TraceFormat::PingLinux;
  std::size_t timeouts = 0;
  // Replies reported as "time<X ms", recorded as X/2.
  std::size_t below_resolution = 0;
};

PingParseResult parse_ping(std::string_view text, const PingOptions& options = {});

DelayTrace parse_csv(std::string_view text);
std::string serialize_csv(const DelayTrace& trace);

// Auto-detecting front end over parse_csv / parse_ping.
DelayTrace parse_trace(std::string_view text, const PingOptions& options = {});

std::map<Bytes, DelayTrace> split_by_size(const DelayTrace& trace);

}  // namespace netdelay
