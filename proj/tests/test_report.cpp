#include <doctest.h>

#include "netdelay/error.hpp"
#include "netdelay/generate.hpp"
#include "netdelay/report.hpp"

using namespace netdelay;

namespace {

FitReport sample_report(double capacity) {
  const PathParameters p(0.009004329004329004, capacity, 0.0031234567890123, 0.0131, 100);
  FitReport r{p};
  r.kind = TraceKind::OWD;
  r.capacity_statistic = DelayStatistic::Minimum;
  r.k_nor = 0.9312345678901234;
  r.k_exp = 0.9987654321098765;
  r.inputs = {{"traces/a b.csv", 2000, 100, 1200000000.5, 1200001999.5},
              {"traces/b.csv", 2000, 1024, 0.1, 1999.1}};

  const auto trace = generate_uniform_stream({.params = PathParameters::from_rate(0.009, 1e5, 300.0, 100), .seed = 1},
                                             2000, 100, 1.0);
  WindowScanOptions opts;
  opts.mode = WindowMode::AllDisjoint;
  r.windows_exp = window_scan(trace, kDefaultWindowSizes, DistKind::Exponential, opts);
  r.windows_normal = window_scan(trace, std::vector<std::size_t>{50, 250}, DistKind::TruncatedNormal);
  return r;
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_report(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected netdelay::Error");
  return ErrorCode::InvalidArgument;
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
  const auto at = text.find("\n" + key + " = ");
  REQUIRE(at != std::string::npos);
  const auto end = text.find('\n', at + 1);
  return text.replace(at + 1, end - at - 1, line);
}

}  // namespace

TEST_CASE("report round trip") {
  for (double capacity : {100434.78260869568, kInfiniteCapacity}) {
    const auto r = sample_report(capacity);
    const auto text = serialize_report(r);
    CHECK(parse_report(text) == r);
    CHECK(serialize_report(parse_report(text)) == text);
  }
  const auto text = serialize_report(sample_report(kInfiniteCapacity));
  CHECK(text.find("capacity_Bps = inf\n") != std::string::npos);
  CHECK(text.rfind("#", 0) == 0);
  CHECK(text.find("format_version = 1\n") != std::string::npos);
}

TEST_CASE("report with no windows or inputs") {
  FitReport r{PathParameters(0.01, kInfiniteCapacity, 0.002, 0.012, 64)};
  CHECK(parse_report(serialize_report(r)) == r);
}

TEST_CASE("parser tolerates comments, blank lines and CRLF") {
  std::string text = serialize_report(sample_report(1e5));
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += "\r\n\r\n# note\r\n";
    else crlf += c;
  }
  CHECK(parse_report(crlf) == parse_report(text));
}

TEST_CASE("schema errors") {
  const auto good = serialize_report(sample_report(1e5));
  CHECK(parse_code("") == ErrorCode::SchemaMismatch);
  CHECK(parse_code("not a report\n") == ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "format_version", "format_version = 2")) == ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "kind", "kind = UDP")) == ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "sigma_s", "sigma_s = abc")) == ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "sigma_s", "sigma_s = -1")) == ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "capacity_statistic", "capacity_statistic = median")) ==
        ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "packet_size_ref", "packet_size_ref = 0")) == ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "window.exp.0.accepted", "window.exp.0.accepted = maybe")) ==
        ErrorCode::SchemaMismatch);
  CHECK(parse_code(replace_line(good, "input.count", "input.count = 3")) == ErrorCode::SchemaMismatch);
}
