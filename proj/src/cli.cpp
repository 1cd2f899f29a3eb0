#include "netdelay/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "netdelay/decimal.hpp"
#include "netdelay/dist.hpp"
#include "netdelay/error.hpp"
#include "netdelay/generate.hpp"
#include "netdelay/ingest.hpp"
#include "netdelay/report.hpp"
#include "netdelay/stats.hpp"

namespace netdelay::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::InvalidArgument, "write to '" + out_path + "' failed");
}

struct InputOptions {
  std::optional<Bytes> assumed_size;
  double interval = 1.0;
};

DelayTrace load_trace(const std::string& path, const InputOptions& opts) {
  PingOptions ping;
  ping.assumed_size = opts.assumed_size;
  ping.interval = opts.interval;
  auto trace = parse_trace(read_file(path), ping);
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "'" + path + "' holds no samples");
  trace.set_labels(path, trace.destination());
  return trace;
}

InputProvenance provenance(const DelayTrace& trace) {
  return {trace.source(), trace.size(), trace.uniform_size().value_or(0), trace[0].sent_at(),
          trace.samples().back().sent_at()};
}

std::vector<std::size_t> usable_windows(const std::vector<std::size_t>& requested, std::size_t length,
                                        std::ostream& err) {
  std::vector<std::size_t> keep;
  for (auto s : requested) {
    if (s <= length)
      keep.push_back(s);
    else
      err << "note: skipping window " << s << " (trace has " << length << " samples)\n";
  }
  return keep;
}

void add_input_options(CLI::App* cmd, InputOptions& opts) {
  cmd->add_option("--assumed-size", opts.assumed_size, "packet size for ping lines without a byte count")
      ->check(CLI::Range(1u, 0xFFFFFFFFu));
  cmd->add_option("--interval", opts.interval, "spacing in seconds used to timestamp ping replies")
      ->check(CLI::PositiveNumber);
}

// --- fit ---------------------------------------------------------------------

struct FitArgs {
  std::vector<std::string> traces;
  std::string out;
  std::string capacity_stat = "mean";
  double dfixed_percentile = 0.0;
  std::size_t min_samples = 20;
  std::vector<std::size_t> windows{kDefaultWindowSizes.begin(), kDefaultWindowSizes.end()};
  double significance = 0.95;
  InputOptions input;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<DelayTrace> traces;
  for (const auto& path : a.traces) traces.push_back(load_trace(path, a.input));

  if (traces.size() == 1 && !traces[0].uniform_size()) {
    auto parts = split_by_size(traces[0]);
    if (parts.size() != 2)
      throw Error(ErrorCode::SizeConflict, "a single trace may hold one or two packet sizes, found " +
                                               std::to_string(parts.size()));
    traces.clear();
    for (auto& [size, part] : parts) traces.push_back(std::move(part));
  }
  for (const auto& t : traces)
    if (!t.uniform_size()) throw Error(ErrorCode::SizeConflict, "'" + t.source() + "' mixes packet sizes");
  std::sort(traces.begin(), traces.end(),
            [](const DelayTrace& x, const DelayTrace& y) { return *x.uniform_size() < *y.uniform_size(); });

  const auto stat = a.capacity_stat == "min" ? DelayStatistic::Minimum : DelayStatistic::Mean;
  const DelayTrace& ref = traces.front();
  double d_min = 0.0;
  double capacity = kInfiniteCapacity;
  if (traces.size() == 2) {
    const DelayTrace& large = traces.back();
    capacity = estimate_capacity(ref, large, stat);
    d_min = estimate_d_min(*ref.uniform_size(), fixed_delay_estimate(ref, a.dfixed_percentile),
                           *large.uniform_size(), fixed_delay_estimate(large, a.dfixed_percentile));
  } else {
    d_min = fixed_delay_estimate(ref, a.dfixed_percentile);
  }

  FitOptions fit_opts;
  fit_opts.min_samples = a.min_samples;
  FitReport report{fit_parameters(ref, d_min, capacity, fit_opts)};
  report.kind = ref.kind();
  report.capacity_statistic = stat;
  const Bytes w = *ref.uniform_size();
  const auto ecdf = empirical_cdf(ref);
  report.k_exp = pearson_correlation(ecdf, {DistKind::Exponential, report.params}, w);
  report.k_nor = pearson_correlation(ecdf, {DistKind::TruncatedNormal, report.params}, w);

  const auto sizes = usable_windows(a.windows, ref.size(), err);
  WindowScanOptions scan_opts;
  scan_opts.significance = a.significance;
  scan_opts.d_min = d_min;
  scan_opts.capacity = capacity;
  report.windows_exp = window_scan(ref, sizes, DistKind::Exponential, scan_opts);
  report.windows_normal = window_scan(ref, sizes, DistKind::TruncatedNormal, scan_opts);
  for (const auto& t : traces) report.inputs.push_back(provenance(t));

  emit(serialize_report(report), a.out, out);
  return kOk;
}

// --- gof ---------------------------------------------------------------------

struct GofArgs {
  std::string trace;
  std::string report;
  std::string hypothesis = "exp";
  std::vector<std::size_t> windows{kDefaultWindowSizes.begin(), kDefaultWindowSizes.end()};
  double significance = 0.95;
  std::string mode = "leading";
  std::string params = "per-window";
  std::string out;
  InputOptions input;
};

int cmd_gof(const GofArgs& a, std::ostream& out, std::ostream& err) {
  const auto trace = load_trace(a.trace, a.input);
  const auto kind = a.hypothesis == "exp" ? DistKind::Exponential : DistKind::TruncatedNormal;

  if (!a.windows.empty()) {
    const auto smallest = *std::min_element(a.windows.begin(), a.windows.end());
    if (trace.size() < smallest)
      throw Error(ErrorCode::TraceTooShort, "trace has " + std::to_string(trace.size()) +
                                                " samples, smallest window is " + std::to_string(smallest));
  }
  const auto sizes = usable_windows(a.windows, trace.size(), err);

  WindowScanOptions opts;
  opts.significance = a.significance;
  opts.mode = a.mode == "all" ? WindowMode::AllDisjoint : WindowMode::Leading;
  opts.parameters = a.params == "global" ? ParameterSource::TraceGlobal : ParameterSource::PerWindow;
  if (!a.report.empty()) {
    const auto rep = parse_report(read_file(a.report));
    opts.d_min = rep.params.d_min();
    opts.capacity = rep.params.capacity();
  }
  const auto scan = window_scan(trace, sizes, kind, opts);

  const auto cell = [](const std::string& s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%12s", s.c_str());
    return std::string(buf);
  };
  const auto num = [&](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return cell(buf);
  };
  char sig[32];
  std::snprintf(sig, sizeof sig, "%g", a.significance);

  std::string text = "# netdelay goodness of fit\n";
  text += "# hypothesis: " + std::string(to_string(kind)) + "  trace: " + a.trace +
          "  samples: " + std::to_string(trace.size()) +
          "  packet_size: " + std::to_string(trace.uniform_size().value_or(0)) + "\n";
  std::string rows[6] = {"N", "n", std::string("chi2_") + sig + ",n-1", "t", "accepted", "accepted_frac"};
  for (auto& r : rows) r.resize(16, ' ');
  for (const auto& r : scan.results) {
    rows[0] += cell(std::to_string(r.n_samples));
    rows[1] += cell(std::to_string(r.n_cells));
    rows[2] += num(r.threshold);
    rows[3] += num(r.statistic);
    rows[4] += cell(r.accepted ? "Yes" : "No");
  }
  for (double f : scan.acceptance_fraction) rows[5] += num(f);
  const int n_rows = scan.acceptance_fraction.empty() ? 5 : 6;
  for (int i = 0; i < n_rows; ++i) text += rows[i] + "\n";

  emit(text, a.out, out);
  return kOk;
}

// --- generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string report;
  std::optional<double> d_min;
  double capacity = kInfiniteCapacity;
  std::optional<double> lambda;
  std::size_t count = 1000;
  std::optional<Bytes> size;
  std::uint64_t seed = 0;
  double interval = 1.0;
  std::optional<std::string> kind;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream&) {
  std::optional<PathParameters> params;
  TraceKind kind = TraceKind::OWD;
  if (!a.report.empty()) {
    const auto rep = parse_report(read_file(a.report));
    params = rep.params;
    kind = rep.kind;
  } else {
    if (!a.d_min || !a.lambda)
      throw Error(ErrorCode::InvalidArgument, "give --report or both --d-min and --lambda");
    params = PathParameters::from_rate(*a.d_min, a.capacity, *a.lambda, a.size.value_or(100));
  }
  if (a.kind) kind = *a.kind == "RTT" ? TraceKind::RTT : TraceKind::OWD;

  GeneratorConfig config{*params, a.seed, a.size.value_or(params->packet_size_ref()), kind};
  const auto trace = generate_uniform_stream(config, a.count, config.default_size, a.interval);
  emit(serialize_csv(trace), a.out, out);
  return kOk;
}

// --- plotdata ----------------------------------------------------------------

struct PlotArgs {
  std::string trace;
  std::string report;
  std::string out;
  InputOptions input;
};

int cmd_plotdata(const PlotArgs& a, std::ostream& out, std::ostream&) {
  const auto trace = load_trace(a.trace, a.input);
  const auto rep = parse_report(read_file(a.report));
  const auto size = trace.uniform_size();
  if (!size) throw Error(ErrorCode::SizeConflict, "plot data needs a single packet size");

  const auto ecdf = empirical_cdf(trace);
  const auto points = ecdf.sorted_delays();
  const auto f_emp = ecdf.values_at_samples();
  std::string text = "# delay_s F_emp F_normal F_exp\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    text += decimal::format_shortest(points[i]) + ' ' + decimal::format_shortest(f_emp[i]) + ' ' +
            decimal::format_shortest(trunc_normal_cdf(rep.params, points[i], *size)) + ' ' +
            decimal::format_shortest(exp_cdf(rep.params, points[i], *size)) + '\n';
  }
  emit(text, a.out, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const CLI::Range kWindowRange(std::size_t{10}, std::numeric_limits<std::size_t>::max());

  CLI::App app{"Fit, test and generate two-component network delay models", "netdelay"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "estimate path parameters from one or two traces");
  fit_cmd->add_option("--trace", fit.traces, "trace file (CSV or ping output), give twice for two sizes")
      ->required()
      ->expected(1, 2)
      ->take_all();
  fit_cmd->add_option("--out", fit.out, "report path (default stdout)");
  fit_cmd->add_option("--capacity-stat", fit.capacity_stat, "per-trace statistic for capacity")
      ->check(CLI::IsMember({"mean", "min"}));
  fit_cmd->add_option("--dfixed-percentile", fit.dfixed_percentile,
                      "percentile used as the fixed-delay estimate (0 = minimum)")
      ->check(CLI::Range(0.0, 99.999));
  fit_cmd->add_option("--min-samples", fit.min_samples, "minimum samples for a fit");
  fit_cmd->add_option("--windows", fit.windows, "window sizes for the goodness-of-fit scan")
      ->delimiter(',')
      ->check(kWindowRange);
  fit_cmd->add_option("--significance", fit.significance)->check(CLI::Range(0.0, 1.0));
  add_input_options(fit_cmd, fit.input);

  GofArgs gof;
  auto* gof_cmd = app.add_subcommand("gof", "Pearson chi-square test over delay windows");
  gof_cmd->add_option("--trace", gof.trace)->required();
  gof_cmd->add_option("--hypothesis", gof.hypothesis)->check(CLI::IsMember({"exp", "normal"}));
  gof_cmd->add_option("--windows", gof.windows)->delimiter(',')->check(kWindowRange);
  gof_cmd->add_option("--significance", gof.significance)->check(CLI::Range(0.0, 1.0));
  gof_cmd->add_option("--mode", gof.mode, "leading window or all disjoint windows")
      ->check(CLI::IsMember({"leading", "all"}));
  gof_cmd->add_option("--params", gof.params, "refit per window or use trace-global parameters")
      ->check(CLI::IsMember({"per-window", "global"}));
  gof_cmd->add_option("--report", gof.report, "fit report supplying D_min and capacity");
  gof_cmd->add_option("--out", gof.out);
  add_input_options(gof_cmd, gof.input);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "synthesize delays from fitted parameters");
  gen_cmd->add_option("--report", gen.report, "fit report to take parameters from");
  gen_cmd->add_option("--d-min", gen.d_min, "zero-size delay in seconds")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--capacity", gen.capacity, "bytes per second (default infinite)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--lambda", gen.lambda, "rate of the variable part, 1/s")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--count", gen.count)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--size", gen.size, "packet size in bytes")->check(CLI::Range(1u, 0xFFFFFFFFu));
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--interval", gen.interval)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--kind", gen.kind)->check(CLI::IsMember({"RTT", "OWD"}));
  gen_cmd->add_option("--out", gen.out);

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plotdata", "empirical and model CDF columns for plotting");
  plot_cmd->add_option("--trace", plot.trace)->required();
  plot_cmd->add_option("--report", plot.report)->required();
  plot_cmd->add_option("--out", plot.out);
  add_input_options(plot_cmd, plot.input);

  std::vector<std::string> argv_store{"netdelay"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit, out, err);
    if (gof_cmd->parsed()) return cmd_gof(gof, out, err);
    if (gen_cmd->parsed()) return cmd_generate(gen, out, err);
    if (plot_cmd->parsed()) return cmd_plotdata(plot, out, err);
  } catch (const Error& e) {
    err << "netdelay: " << e.what() << "\n";
    return is_input_error(e.code()) ? kInputError : kEstimationError;
  } catch (const std::exception& e) {
    err << "netdelay: " << e.what() << "\n";
    return kEstimationError;
  }
  return kInputError;
}

}  // namespace netdelay::cli
