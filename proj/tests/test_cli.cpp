#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "netdelay/cli.hpp"
#include "netdelay/dist.hpp"
#include "netdelay/generate.hpp"
#include "netdelay/ingest.hpp"
#include "netdelay/report.hpp"

using namespace netdelay;
namespace fs = std::filesystem;

namespace {

const PathParameters kParams = PathParameters::from_rate(0.009, 100000.0, 1000.0 / 3.0, 100);

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("netdelay_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name), std::ios::binary) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trace_csv(std::uint64_t seed, std::size_t n, Bytes size) {
  return serialize_csv(generate_uniform_stream({.params = kParams, .seed = seed}, n, size, 1.0));
}

}  // namespace

TEST_CASE("cli fit") {
  TempDir dir;
  const auto small = dir.write("small.csv", trace_csv(1, 2000, 100));
  const auto large = dir.write("large.csv", trace_csv(2, 2000, 1024));

  SUBCASE("two traces") {
    const auto r = run({"fit", "--trace", small, large});
    REQUIRE(r.code == 0);
    const auto rep = parse_report(r.out);
    CHECK(rep.params.packet_size_ref() == 100);
    CHECK(rep.inputs.size() == 2);
    CHECK(std::fabs(rep.params.capacity() / kParams.capacity() - 1.0) < 0.1);
    CHECK(rep.k_exp > rep.k_nor);
    CHECK(rep.windows_exp.results.size() == 7);

    // repeated --trace and reversed order give the same parameters
    const auto again = run({"fit", "--trace", large, "--trace", small});
    REQUIRE(again.code == 0);
    CHECK(parse_report(again.out).params == rep.params);
  }

  SUBCASE("one file holding both sizes") {
    const auto both = dir.write("both.csv", "ts,delay_us,size_bytes,kind\n1,10100,100,OWD\n2,20300,1024,OWD\n"
                                            "3,10200,100,OWD\n4,20100,1024,OWD\n5,10900,100,OWD\n"
                                            "6,20500,1024,OWD\n7,10400,100,OWD\n8,21000,1024,OWD\n");
    const auto r = run({"fit", "--trace", both, "--min-samples", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("input.count = 2") != std::string::npos);
  }

  SUBCASE("single small trace has no capacity and skips long windows") {
    const auto tiny = dir.write("tiny.csv", trace_csv(3, 20, 100));
    const auto out = dir.file("rep.txt");
    const auto r = run({"fit", "--trace", tiny, "--out", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto text = read(out);
    CHECK(text.find("capacity_Bps = inf\n") != std::string::npos);
    CHECK(r.err.find("skipping window 50") != std::string::npos);
  }

  SUBCASE("input and estimation errors") {
    CHECK(run({"fit", "--trace", dir.write("empty.csv", "")}).code == 2);
    CHECK(run({"fit", "--trace", dir.write("bad.csv", "time,rtt\n1,2\n")}).code == 2);
    CHECK(run({"fit", "--trace", dir.file("missing.csv")}).code == 2);
    CHECK(run({"fit"}).code == 2);
    CHECK(run({"fit", "--trace", small, "--windows", "5"}).code == 2);
    CHECK(run({"fit", "--trace", small, "--windows", ""}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"fit", "--trace", dir.write("few.csv", trace_csv(4, 5, 100))}).code == 3);
    // two files of the same size cannot anchor a capacity
    CHECK(run({"fit", "--trace", small, dir.write("same.csv", trace_csv(5, 2000, 100))}).code == 3);
  }
}

TEST_CASE("cli gof") {
  TempDir dir;
  const auto trace = dir.write("t.csv", trace_csv(11, 2000, 100));
  SUBCASE("exponential data") {
    const auto r = run({"gof", "--trace", trace, "--windows", "50,250,1000"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("accepted") != std::string::npos);
    CHECK(r.out.find("chi2_0.95,n-1") != std::string::npos);
    CHECK(r.out.find("No") == std::string::npos);

    const auto n = run({"gof", "--trace", trace, "--hypothesis", "normal", "--windows", "250,1000,2000"});
    REQUIRE(n.code == 0);
    CHECK(n.out.find("Yes") == std::string::npos);
  }
  SUBCASE("all windows mode prints fractions") {
    const auto r = run({"gof", "--trace", trace, "--mode", "all", "--params", "global"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("accepted_frac") != std::string::npos);
  }
  SUBCASE("errors") {
    const auto shorter = dir.write("s.csv", trace_csv(12, 40, 100));
    CHECK(run({"gof", "--trace", shorter, "--windows", "50"}).code == 3);
    CHECK(run({"gof", "--trace", trace, "--hypothesis", "gamma"}).code == 2);
    CHECK(run({"gof", "--trace", trace, "--report", dir.write("r.txt", "junk\n")}).code == 2);
  }
}

TEST_CASE("cli generate") {
  TempDir dir;
  const std::vector<std::string> args{"generate", "--d-min", "0.009", "--capacity", "100000", "--lambda",
                                      "333.3333333333333", "--count", "10000", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind(std::string(kCsvHeader), 0) == 0);

  const auto t = parse_csv(a.out);
  CHECK(t.size() == 10000);
  const auto p = fit_parameters(t, 0.009, 100000.0);
  CHECK(std::fabs(p.lambda() / kParams.lambda() - 1.0) < 0.02);

  CHECK(run({"generate", "--d-min", "0.009", "--lambda", "300", "--size", "0"}).code == 2);
  CHECK(run({"generate", "--lambda", "300"}).code == 2);
  CHECK(run({"generate", "--d-min", "0.009", "--lambda", "-1"}).code == 2);

  SUBCASE("from a fit report") {
    const auto small = dir.write("a.csv", trace_csv(21, 2000, 100));
    const auto large = dir.write("b.csv", trace_csv(22, 2000, 1024));
    const auto rep = dir.file("rep.txt");
    REQUIRE(run({"fit", "--trace", small, large, "--out", rep}).code == 0);
    const auto g = run({"generate", "--report", rep, "--count", "50", "--size", "1024", "--kind", "RTT"});
    REQUIRE(g.code == 0);
    const auto gt = parse_csv(g.out);
    CHECK(gt.kind() == TraceKind::RTT);
    CHECK(*gt.uniform_size() == 1024);
  }
}

TEST_CASE("cli plotdata") {
  TempDir dir;
  const auto trace = dir.write("t.csv", trace_csv(31, 500, 100));
  const auto rep = dir.write("r.txt", serialize_report(FitReport{kParams}));
  const auto r = run({"plotdata", "--trace", trace, "--report", rep});
  REQUIRE(r.code == 0);

  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# delay_s F_emp F_normal F_exp");
  std::size_t rows = 0;
  double d = 0, f_emp = 0, f_nor = 0, f_exp = 0, prev = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    ls >> d >> f_emp >> f_nor >> f_exp;
    CHECK(f_emp > prev);
    CHECK(f_exp == doctest::Approx(exp_cdf(kParams, d, 100)).epsilon(1e-15));
    prev = f_emp;
    ++rows;
  }
  CHECK(rows == 500);
  CHECK(f_emp == 1.0);
}
