#include "netdelay/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <vector>

#include "netdelay/decimal.hpp"
#include "netdelay/error.hpp"

namespace netdelay {

const char* to_string(TraceFormat format) noexcept {
  switch (format) {
    case TraceFormat::PingLinux: return "ping-linux";
    case TraceFormat::PingWindows: return "ping-windows";
    case TraceFormat::CanonicalCsv: return "csv";
  }
  return "unknown";
}

namespace {

constexpr auto kFlags = std::regex::ECMAScript | std::regex::icase | std::regex::optimize;

const std::regex& linux_reply() {
  static const std::regex re(
      R"(^\s*(\d+)\s+bytes\s+from\s+(.+?):\s.*?\btime\s*([=<])\s*(\d+(?:[.,]\d+)?)\s*ms)", kFlags);
  return re;
}

const std::regex& windows_reply() {
  static const std::regex re(
      R"(^\s*reply\s+from\s+(.+?):\s+(?:bytes\s*=\s*(\d+)\s+)?time\s*([=<])\s*(\d+(?:[.,]\d+)?)\s*ms)",
      kFlags);
  return re;
}

const std::regex& timeout_line() {
  static const std::regex re(
      R"(request\s+timed\s+out|request\s+timeout\s+for|no\s+answer\s+yet|destination\s+(host|net|port)\s+unreachable)",
      kFlags);
  return re;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::string_view strip_bom(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  return text;
}

bool is_csv(std::string_view text) {
  for (auto line : split_lines(strip_bom(text))) {
    line = trim(line);
    if (line.empty()) continue;
    return line == kCsvHeader;
  }
  return false;
}

std::optional<Bytes> parse_bytes(std::string_view s) {
  unsigned long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 1 || value > 0xFFFFFFFFul)
    return std::nullopt;
  return static_cast<Bytes>(value);
}

}  // namespace

TraceFormat detect_format(std::string_view text) {
  if (is_csv(text)) return TraceFormat::CanonicalCsv;
  bool has_linux = false;
  bool has_windows = false;
  for (auto line : split_lines(text)) {
    const std::string s(line);
    has_linux = has_linux || std::regex_search(s, linux_reply());
    has_windows = has_windows || std::regex_search(s, windows_reply());
  }
  if (has_linux && has_windows)
    throw Error(ErrorCode::UnrecognizedFormat, "input mixes Linux and Windows ping output");
  if (has_linux) return TraceFormat::PingLinux;
  if (has_windows) return TraceFormat::PingWindows;
  throw Error(ErrorCode::UnrecognizedFormat, "no CSV header and no ping reply lines");
}

PingParseResult parse_ping(std::string_view text, const PingOptions& options) {
  if (!(options.interval > 0.0))
    throw Error(ErrorCode::InvalidArgument, "ping interval must be positive");

  PingParseResult result;
  result.trace = DelayTrace(TraceKind::RTT, "ping");
  bool seen_linux = false;
  bool seen_windows = false;
  std::size_t reply_shaped = 0;

  for (auto line : split_lines(text)) {
    const std::string s(line);
    std::smatch m;
    std::string size_text;
    std::string host;
    bool is_reply = false;
    if (std::regex_search(s, m, linux_reply())) {
      seen_linux = true;
      is_reply = true;
      size_text = m[1].str();
      host = m[2].str();
    } else if (std::regex_search(s, m, windows_reply())) {
      seen_windows = true;
      is_reply = true;
      size_text = m[2].matched ? m[2].str() : std::string{};
      host = m[1].str();
    }

    if (!is_reply) {
      if (std::regex_search(s, timeout_line())) {
        ++result.timeouts;
        ++reply_shaped;
      }
      continue;
    }
    if (seen_linux && seen_windows)
      throw Error(ErrorCode::UnrecognizedFormat, "input mixes Linux and Windows ping output");

    std::string time_text = m[4].str();
    std::replace(time_text.begin(), time_text.end(), ',', '.');
    auto delay = decimal::parse_scaled(time_text, -3);
    if (!delay) throw Error(ErrorCode::UnrecognizedFormat, "bad time field: " + s);
    const bool bounded = m[3].str() == "<";
    if (bounded || *delay <= 0.0) {
      // Only an upper bound is known; record the midpoint of [0, bound].
      *delay = *delay > 0.0 ? *delay / 2.0 : 0.0005;
      ++result.below_resolution;
    }

    std::optional<Bytes> size = options.assumed_size;
    if (!size_text.empty()) size = parse_bytes(size_text);
    if (!size) throw Error(ErrorCode::MissingSize, "reply line carries no size and none was assumed");

    if (result.trace.empty()) result.trace.set_labels("ping", host);
    result.trace.push_back(
        DelaySample(static_cast<double>(reply_shaped) * options.interval, *delay, *size));
    ++reply_shaped;
  }

  if (result.trace.empty())
    throw Error(ErrorCode::UnrecognizedFormat, "no ping reply lines found");
  result.dialect = seen_windows ? TraceFormat::PingWindows : TraceFormat::PingLinux;
  return result;
}

DelayTrace parse_csv(std::string_view text) {
  const auto lines = split_lines(strip_bom(text));
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size() || trim(lines[i]) != kCsvHeader)
    throw Error(ErrorCode::SchemaMismatch,
                "expected header '" + std::string(kCsvHeader) + "'");

  std::optional<TraceKind> kind;
  std::vector<DelaySample> samples;
  for (++i; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(i + 1) + ": ";

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4) throw Error(ErrorCode::RowError, where + "expected 4 fields");

    const auto ts = decimal::parse_scaled(fields[0], 0);
    if (!ts || !std::isfinite(*ts)) throw Error(ErrorCode::RowError, where + "bad ts");
    const auto delay = decimal::parse_scaled(fields[1], -6);
    if (!delay || !std::isfinite(*delay)) throw Error(ErrorCode::RowError, where + "bad delay_us");
    if (!(*delay > 0.0)) throw Error(ErrorCode::RowError, where + "delay_us must be positive");
    const auto size = parse_bytes(fields[2]);
    if (!size) throw Error(ErrorCode::RowError, where + "size_bytes must be a positive integer");

    TraceKind row_kind;
    if (fields[3] == "RTT") row_kind = TraceKind::RTT;
    else if (fields[3] == "OWD") row_kind = TraceKind::OWD;
    else throw Error(ErrorCode::RowError, where + "kind must be RTT or OWD");
    if (kind && *kind != row_kind) throw Error(ErrorCode::RowError, where + "trace mixes RTT and OWD rows");
    kind = row_kind;

    if (!samples.empty() && *ts < samples.back().sent_at())
      throw Error(ErrorCode::RowError, where + "ts decreases");
    samples.emplace_back(*ts, *delay, *size);
  }
  return DelayTrace(std::move(samples), kind.value_or(TraceKind::RTT));
}

std::string serialize_csv(const DelayTrace& trace) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& s : trace.samples()) {
    out += decimal::format_scaled(s.sent_at(), 0);
    out += ',';
    out += decimal::format_scaled(s.delay(), 6);
    out += ',';
    out += std::to_string(s.packet_size());
    out += ',';
    out += to_string(trace.kind());
    out += '\n';
  }
  return out;
}

DelayTrace parse_trace(std::string_view text, const PingOptions& options) {
  if (detect_format(text) == TraceFormat::CanonicalCsv) return parse_csv(text);
  return parse_ping(text, options).trace;
}

std::map<Bytes, DelayTrace> split_by_size(const DelayTrace& trace) {
  std::map<Bytes, DelayTrace> parts;
  for (const auto& s : trace.samples()) {
    auto it = parts.find(s.packet_size());
    if (it == parts.end())
      it = parts.emplace(s.packet_size(), DelayTrace(trace.kind(), trace.source(), trace.destination()))
               .first;
    it->second.push_back(s);
  }
  return parts;
}

}  // namespace netdelay
