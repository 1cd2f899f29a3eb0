#include "netdelay/report.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>

#include "netdelay/decimal.hpp"
#include "netdelay/error.hpp"

namespace netdelay {

namespace {

std::string ms(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f ms", seconds * 1e3);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class KeyWriter {
 public:
  explicit KeyWriter(std::string& out) : out_(out) {}
  void put(const std::string& key, const std::string& value) { out_ += key + " = " + value + "\n"; }
  void put(const std::string& key, double value) { put(key, decimal::format_shortest(value)); }
  void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }

 private:
  std::string& out_;
};

void write_scan(KeyWriter& kw, const std::string& prefix, const WindowScan& scan) {
  kw.put(prefix + ".count", scan.results.size());
  for (std::size_t i = 0; i < scan.results.size(); ++i) {
    const auto& r = scan.results[i];
    const std::string p = prefix + "." + std::to_string(i);
    kw.put(p + ".n_samples", r.n_samples);
    kw.put(p + ".n_cells", r.n_cells);
    kw.put(p + ".threshold", r.threshold);
    kw.put(p + ".statistic", r.statistic);
    kw.put(p + ".accepted", r.accepted ? "yes" : "no");
    if (i < scan.acceptance_fraction.size())
      kw.put(p + ".acceptance_fraction", scan.acceptance_fraction[i]);
  }
}

void summarize_scan(std::string& out, const char* label, const WindowScan& scan) {
  if (scan.results.empty()) return;
  out += "#   ";
  out += label;
  out += " windows:";
  for (const auto& r : scan.results)
    out += " N=" + std::to_string(r.n_samples) + (r.accepted ? ":Yes" : ":No");
  out += "\n";
}

class KeyReader {
 public:
  explicit KeyReader(std::string_view text) {
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(start, end - start);
      start = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos || line[first] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw Error(ErrorCode::SchemaMismatch, "report line " + std::to_string(line_no) + " is not key = value");
      values_[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::SchemaMismatch, "report is missing key '" + key + "'");
    return it->second;
  }

  double real(const std::string& key) const {
    const auto& v = text(key);
    if (v == "inf") return kInfiniteCapacity;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      throw Error(ErrorCode::SchemaMismatch, "key '" + key + "' is not a number");
    return out;
  }

  std::size_t count(const std::string& key) const {
    const auto& v = text(key);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      throw Error(ErrorCode::SchemaMismatch, "key '" + key + "' is not a count");
    return out;
  }

  bool flag(const std::string& key) const {
    const auto& v = text(key);
    if (v == "yes") return true;
    if (v == "no") return false;
    throw Error(ErrorCode::SchemaMismatch, "key '" + key + "' must be yes or no");
  }

 private:
  static std::string_view trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string_view::npos) return {};
    return s.substr(a, s.find_last_not_of(" \t") - a + 1);
  }

  std::map<std::string, std::string> values_;
};

WindowScan read_scan(const KeyReader& kr, const std::string& prefix, DistKind kind) {
  WindowScan scan;
  const std::size_t n = kr.count(prefix + ".count");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = prefix + "." + std::to_string(i);
    GofResult r;
    r.n_samples = kr.count(p + ".n_samples");
    r.n_cells = kr.count(p + ".n_cells");
    r.threshold = kr.real(p + ".threshold");
    r.statistic = kr.real(p + ".statistic");
    r.accepted = kr.flag(p + ".accepted");
    r.dist_kind = kind;
    scan.window_sizes.push_back(r.n_samples);
    scan.results.push_back(r);
    if (kr.has(p + ".acceptance_fraction"))
      scan.acceptance_fraction.push_back(kr.real(p + ".acceptance_fraction"));
  }
  return scan;
}

}  // namespace

std::string serialize_report(const FitReport& r) {
  const auto& p = r.params;
  std::string out;
  out += "# netdelay fit report\n#\n";
  out += std::string("#   kind        ") + to_string(r.kind) + "\n";
  out += "#   D_min       " + ms(p.d_min()) + "\n";
  out += "#   capacity    " +
         (p.has_capacity() ? fixed(p.capacity(), 1) + " B/s (" + to_string(r.capacity_statistic) + " delays)"
                           : std::string("unavailable (single packet size)")) +
         "\n";
  out += "#   sigma       " + ms(p.sigma()) + "\n";
  out += "#   lambda      " + fixed(p.lambda(), 3) + " 1/s\n";
  out += "#   D_av        " + ms(p.d_av()) + " at W = " + std::to_string(p.packet_size_ref()) + " B\n";
  out += "#   K_nor       " + fixed(r.k_nor, 4) + "\n";
  out += "#   K_exp       " + fixed(r.k_exp, 4) + "\n";
  summarize_scan(out, "exp", r.windows_exp);
  summarize_scan(out, "normal", r.windows_normal);
  out += "#\n";

  KeyWriter kw(out);
  kw.put("format_version", std::to_string(kReportFormatVersion));
  kw.put("kind", to_string(r.kind));
  kw.put("d_min_s", p.d_min());
  kw.put("capacity_Bps", p.capacity());
  kw.put("sigma_s", p.sigma());
  kw.put("lambda_per_s", p.lambda());
  kw.put("d_av_s", p.d_av());
  kw.put("packet_size_ref", static_cast<std::size_t>(p.packet_size_ref()));
  kw.put("capacity_statistic", to_string(r.capacity_statistic));
  kw.put("k_nor", r.k_nor);
  kw.put("k_exp", r.k_exp);
  kw.put("input.count", r.inputs.size());
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    const auto& in = r.inputs[i];
    const std::string k = "input." + std::to_string(i);
    kw.put(k + ".path", in.path);
    kw.put(k + ".samples", in.samples);
    kw.put(k + ".packet_size", static_cast<std::size_t>(in.packet_size));
    kw.put(k + ".first_ts", in.first_ts);
    kw.put(k + ".last_ts", in.last_ts);
  }
  write_scan(kw, "window.exp", r.windows_exp);
  write_scan(kw, "window.normal", r.windows_normal);
  return out;
}

FitReport parse_report(std::string_view text) {
  const KeyReader kr(text);
  if (kr.text("format_version") != std::to_string(kReportFormatVersion))
    throw Error(ErrorCode::SchemaMismatch, "unsupported report format_version " + kr.text("format_version"));

  const auto& kind = kr.text("kind");
  if (kind != "RTT" && kind != "OWD") throw Error(ErrorCode::SchemaMismatch, "kind must be RTT or OWD");
  const auto& stat = kr.text("capacity_statistic");
  if (stat != "mean" && stat != "min")
    throw Error(ErrorCode::SchemaMismatch, "capacity_statistic must be mean or min");

  const auto size_ref = kr.count("packet_size_ref");
  if (size_ref < 1 || size_ref > 0xFFFFFFFFu) throw Error(ErrorCode::SchemaMismatch, "bad packet_size_ref");

  try {
    FitReport r{PathParameters(kr.real("d_min_s"), kr.real("capacity_Bps"), kr.real("sigma_s"),
                               kr.real("d_av_s"), static_cast<Bytes>(size_ref))};
    r.kind = kind == "RTT" ? TraceKind::RTT : TraceKind::OWD;
    r.capacity_statistic = stat == "mean" ? DelayStatistic::Mean : DelayStatistic::Minimum;
    r.k_nor = kr.real("k_nor");
    r.k_exp = kr.real("k_exp");
    const std::size_t n_inputs = kr.count("input.count");
    for (std::size_t i = 0; i < n_inputs; ++i) {
      const std::string k = "input." + std::to_string(i);
      InputProvenance in;
      in.path = kr.text(k + ".path");
      in.samples = kr.count(k + ".samples");
      in.packet_size = static_cast<Bytes>(kr.count(k + ".packet_size"));
      in.first_ts = kr.real(k + ".first_ts");
      in.last_ts = kr.real(k + ".last_ts");
      r.inputs.push_back(in);
    }
    r.windows_exp = read_scan(kr, "window.exp", DistKind::Exponential);
    r.windows_normal = read_scan(kr, "window.normal", DistKind::TruncatedNormal);
    return r;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaMismatch) throw;
    throw Error(ErrorCode::SchemaMismatch, std::string("invalid parameters in report: ") + e.what());
  }
}

}  // namespace netdelay
