#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "netdelay/error.hpp"
#include "netdelay/stats.hpp"
#include "oracles.hpp"

using namespace netdelay;

namespace {

constexpr double kDmin = 0.009;
constexpr double kSigma = 0.003;

std::vector<double> exp_window(std::size_t n, std::uint64_t seed, double sigma = kSigma) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> ex(1.0 / sigma);
  std::vector<double> v(n);
  for (auto& x : v) x = kDmin + ex(rng);
  return v;
}

std::vector<double> half_normal_window(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, kSigma);
  std::vector<double> v(n);
  for (auto& x : v) x = kDmin + std::fabs(nd(rng)) + 1e-12;
  return v;
}

DelayTrace to_trace(const std::vector<double>& delays, Bytes w = 100) {
  DelayTrace t(TraceKind::OWD);
  for (std::size_t i = 0; i < delays.size(); ++i) t.push_back(DelaySample(2.0 * i, delays[i], w));
  return t;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected netdelay::Error");
  return ErrorCode::InvalidArgument;
}

const PathParameters kTrue = PathParameters::from_rate(kDmin, kInfiniteCapacity, 1.0 / kSigma, 100);

}  // namespace

TEST_CASE("empirical_cdf") {
  const auto e = empirical_cdf(to_trace({0.003, 0.001, 0.002}));
  CHECK(e(0.002) == doctest::Approx(2.0 / 3.0));
  CHECK(e(0.0005) == 0.0);
  CHECK(e(0.003) == 1.0);
  CHECK(code_of([] { empirical_cdf(DelayTrace(TraceKind::RTT)); }) == ErrorCode::EmptyTrace);

  SUBCASE("step function properties") {
    const auto w = exp_window(500, 5);
    std::vector<double> with_ties = w;
    with_ties.insert(with_ties.end(), w.begin(), w.begin() + 50);
    const EmpiricalCdf ecdf(with_ties);
    const double n = static_cast<double>(ecdf.size());
    double prev = 0.0;
    for (double x = 0.0085; x < 0.05; x += 1e-5) {
      const double f = ecdf(x);
      CHECK(f >= prev);
      CHECK(std::fabs(f * n - std::round(f * n)) < 1e-9);
      prev = f;
    }
    const auto at = ecdf.values_at_samples();
    const auto pts = ecdf.sorted_delays();
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(at[i] == ecdf(pts[i]));
  }
}

TEST_CASE("pearson basics") {
  const auto x = exp_window(300, 1);
  const auto y = exp_window(300, 2);
  CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pearson(x, y) == doctest::Approx(pearson(y, x)).epsilon(1e-14));
  CHECK(pearson(x, y) == doctest::Approx(oracle::pearson_naive(x, y)).epsilon(1e-12));

  std::vector<double> y2(y.size());
  std::transform(y.begin(), y.end(), y2.begin(), [](double v) { return 7.5 * v - 3.0; });
  CHECK(pearson(x, y2) == doctest::Approx(pearson(x, y)).epsilon(1e-12));

  const std::vector<double> flat(300, 0.25);
  CHECK(code_of([&] { pearson(x, flat); }) == ErrorCode::DegenerateVariance);
}

TEST_CASE("pearson_correlation") {
  SUBCASE("model matching the empirical CDF up to a shift") {
    std::vector<double> d;
    for (int i = 0; i < 200; ++i) d.push_back(quantile(kTrue, i / 200.0, 100));
    const EmpiricalCdf ecdf(d);
    CHECK(pearson_correlation(ecdf, {DistKind::Exponential, kTrue}, 100) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("10000 exponential draws") {
    const EmpiricalCdf ecdf(exp_window(10000, 77));
    CHECK(pearson_correlation(ecdf, {DistKind::Exponential, kTrue}, 100) >= 0.99);
  }
  SUBCASE("constant model values") {
    const EmpiricalCdf ecdf(std::vector<double>{0.001, 0.002, 0.003, 0.004});
    CHECK(code_of([&] { pearson_correlation(ecdf, {DistKind::TruncatedNormal, kTrue}, 100); }) ==
          ErrorCode::DegenerateVariance);
  }
  SUBCASE("fewer than three distinct values") {
    const EmpiricalCdf ecdf(std::vector<double>{0.01, 0.01, 0.02});
    CHECK(code_of([&] { pearson_correlation(ecdf, {DistKind::Exponential, kTrue}, 100); }) ==
          ErrorCode::TooFewSamples);
  }
}

TEST_CASE("sturges_cells") {
  CHECK(sturges_cells(100) == 17);
  CHECK(sturges_cells(500) == 22);
  CHECK(sturges_cells(250) == 20);
  CHECK(sturges_cells(200) == 19);
  CHECK(sturges_cells(1000) == 24);
  CHECK(sturges_cells(50) == 15);
  CHECK(sturges_cells(2000) == 26);
  CHECK(sturges_cells(10) == 9);
  CHECK(code_of([] { sturges_cells(9); }) == ErrorCode::TooFewSamples);
}

TEST_CASE("chi_square_quantile thresholds") {
  const std::pair<int, double> table[] = {{13, 22.36}, {16, 26.30}, {18, 28.87}, {19, 30.14},
                                          {21, 32.67}, {23, 35.17}, {26, 38.89}};
  for (auto [df, expected] : table) CHECK(std::fabs(chi_square_quantile(df, 0.95) - expected) <= 0.01);
  // scipy.stats.chi2.ppf values
  CHECK(chi_square_quantile(13, 0.95) == doctest::Approx(22.362032494826934).epsilon(1e-9));
  CHECK(chi_square_quantile(26, 0.95) == doctest::Approx(38.885138659830055).epsilon(1e-9));
  CHECK(chi_square_quantile(1, 0.5) == doctest::Approx(0.454936423119572).epsilon(1e-9));
  CHECK(chi_square_quantile(100, 0.01) == doctest::Approx(70.06489492539978).epsilon(1e-9));
  CHECK(code_of([] { chi_square_quantile(5, 1.0); }) == ErrorCode::InvalidProbability);
  CHECK(code_of([] { chi_square_quantile(5, 0.0); }) == ErrorCode::InvalidProbability);
  CHECK(code_of([] { chi_square_quantile(0, 0.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("chi-square cells") {
  const DelayDistribution dist{DistKind::Exponential, kTrue};

  SUBCASE("perfect fit gives zero") {
    std::vector<double> window;
    const std::size_t cells = 17, per_cell = 6;
    for (std::size_t k = 0; k < cells; ++k)
      for (std::size_t j = 0; j < per_cell; ++j)
        window.push_back(quantile(kTrue, (k + (j + 0.5) / per_cell) / cells, 100));
    CHECK(chi_square_statistic(window, dist, 100, cells) < 1e-20);

    window.front() = window.back();
    CHECK(chi_square_statistic(window, dist, 100, cells) > 0.1);
  }

  SUBCASE("expected counts sum to N") {
    for (DistKind k : {DistKind::Exponential, DistKind::TruncatedNormal}) {
      const auto w = exp_window(777, 3);
      const auto c = chi_square_cells(w, {k, kTrue}, 100, 23);
      double sum = 0.0;
      std::size_t observed = 0;
      for (std::size_t i = 0; i < c.expected.size(); ++i) {
        sum += c.expected[i];
        observed += c.observed[i];
        CHECK(c.expected[i] == doctest::Approx(777.0 / 23.0).epsilon(1e-8));
      }
      CHECK(sum == doctest::Approx(777.0).epsilon(1e-9));
      CHECK(observed == 777);
    }
  }

  SUBCASE("samples below the support land in the first cell") {
    auto w = exp_window(100, 4);
    w[0] = kDmin * 0.5;
    const auto c = chi_square_cells(w, dist, 100, 10);
    const auto c0 = chi_square_cells(exp_window(100, 4), dist, 100, 10);
    CHECK(c.observed[0] >= c0.observed[0]);
  }

  SUBCASE("degenerate scale yields ZeroExpected") {
    const PathParameters tiny(1.0, kInfiniteCapacity, 1e-20, 1.0, 100);
    const std::vector<double> w(50, 1.0);
    CHECK(code_of([&] { chi_square_statistic(w, {DistKind::TruncatedNormal, tiny}, 100, 10); }) ==
          ErrorCode::ZeroExpected);
  }

  SUBCASE("window shorter than the cell count") {
    const auto w = exp_window(5, 1);
    CHECK(code_of([&] { chi_square_statistic(w, dist, 100, 10); }) == ErrorCode::TooFewSamples);
  }
}

TEST_CASE("Monte-Carlo: chi-square statistic on exponential and half-normal data") {
  int below = 0, rejected = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto w = exp_window(250, 1000 + seed);
    const auto p = fit_window(w, 100, kDmin, kInfiniteCapacity);
    below += chi_square_statistic(w, {DistKind::Exponential, p}, 100, sturges_cells(250)) < 30.14;

    // exponential-vs-half-normal power is weak at 250 samples, so use 1000
    const auto h = half_normal_window(1000, 5000 + seed);
    const auto ph = fit_window(h, 100, kDmin, kInfiniteCapacity);
    rejected += chi_square_statistic(h, {DistKind::Exponential, ph}, 100, sturges_cells(1000)) > 35.17;
  }
  CHECK(below >= 90);
  CHECK(rejected >= 90);
}

TEST_CASE("gof_test") {
  SUBCASE("exponential data under both hypotheses") {
    int exp_accepted = 0, normal_rejected = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto w = exp_window(250, 200 + seed);
      const auto r = gof_test(w, DistKind::Exponential, 100, {.d_min = kDmin});
      CHECK(r.n_cells == 20);
      CHECK(r.accepted == (r.statistic < r.threshold));
      exp_accepted += r.accepted;
      normal_rejected += !gof_test(w, DistKind::TruncatedNormal, 100, {.d_min = kDmin}).accepted;
    }
    CHECK(exp_accepted >= 90);
    CHECK(normal_rejected >= 90);
  }

  SUBCASE("rate shift across a 2000-sample window is rejected") {
    int rejected = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto w = exp_window(1000, 300 + seed);
      const auto fast = exp_window(1000, 900 + seed, kSigma / 3.0);
      w.insert(w.end(), fast.begin(), fast.end());
      rejected += !gof_test(w, DistKind::Exponential, 100, {.d_min = kDmin}).accepted;
    }
    CHECK(rejected >= 90);
  }

  SUBCASE("window minimum is the default anchor") {
    const auto w = exp_window(250, 8);
    const double lo = *std::min_element(w.begin(), w.end());
    CHECK(gof_test(w, DistKind::Exponential, 100) == gof_test(w, DistKind::Exponential, 100, {.d_min = lo}));
  }

  SUBCASE("time-unit rescaling leaves t unchanged") {
    const auto w = exp_window(500, 12);
    std::vector<double> us(w.size());
    std::transform(w.begin(), w.end(), us.begin(), [](double v) { return v * 1e6; });
    for (DistKind k : {DistKind::Exponential, DistKind::TruncatedNormal}) {
      const auto a = gof_test(w, k, 100, {.d_min = kDmin});
      const auto b = gof_test(us, k, 100, {.d_min = kDmin * 1e6});
      CHECK(b.statistic == doctest::Approx(a.statistic).epsilon(1e-9));
    }
  }

  SUBCASE("errors") {
    const auto w = exp_window(9, 1);
    CHECK(code_of([&] { gof_test(w, DistKind::Exponential, 100); }) == ErrorCode::TooFewSamples);
    const auto w2 = exp_window(50, 1);
    CHECK(code_of([&] { gof_test(w2, DistKind::Exponential, 100, {.significance = 1.0}); }) ==
          ErrorCode::InvalidProbability);
    CHECK(code_of([&] { gof_test(w2, DistKind::Exponential, 100, {.d_min = 1.0}); }) ==
          ErrorCode::NonPositiveScale);
  }
}

TEST_CASE("window_scan") {
  const auto trace = to_trace(exp_window(2000, 42));

  SUBCASE("default sizes") {
    const auto scan = window_scan(trace, kDefaultWindowSizes, DistKind::Exponential);
    REQUIRE(scan.results.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(scan.results[i].n_samples == kDefaultWindowSizes[i]);
    CHECK(scan.acceptance_fraction.empty());
    // independent of evaluation order
    CHECK(window_scan(trace, kDefaultWindowSizes, DistKind::Exponential) == scan);
  }

  SUBCASE("empty request") {
    const auto scan = window_scan(trace, std::span<const std::size_t>{}, DistKind::Exponential);
    CHECK(scan.results.empty());
    CHECK(scan.window_sizes.empty());
  }

  SUBCASE("too short") {
    const std::size_t sizes[] = {50, 2001};
    CHECK(code_of([&] { window_scan(trace, sizes, DistKind::Exponential); }) == ErrorCode::TraceTooShort);
  }

  SUBCASE("leading window equals a direct gof_test with the trace anchor") {
    const std::size_t sizes[] = {250};
    const auto d = trace.delays();
    const double lo = *std::min_element(d.begin(), d.end());
    const auto scan = window_scan(trace, sizes, DistKind::Exponential);
    CHECK(scan.results[0] ==
          gof_test(std::span<const double>(d).first(250), DistKind::Exponential, 100, {.d_min = lo}));
  }

  SUBCASE("all disjoint windows") {
    const std::size_t sizes[] = {100, 250, 2000};
    WindowScanOptions opts;
    opts.mode = WindowMode::AllDisjoint;
    opts.d_min = kDmin;
    const auto scan = window_scan(trace, sizes, DistKind::Exponential, opts);
    REQUIRE(scan.acceptance_fraction.size() == 3);
    CHECK(scan.acceptance_fraction[0] >= 0.8);
    CHECK(scan.acceptance_fraction[1] >= 0.75);
    CHECK((scan.acceptance_fraction[2] == 0.0 || scan.acceptance_fraction[2] == 1.0));
    CHECK(scan.acceptance_fraction[2] == (scan.results[2].accepted ? 1.0 : 0.0));
  }

  SUBCASE("trace-global parameters") {
    const std::size_t sizes[] = {2000};
    WindowScanOptions opts;
    opts.parameters = ParameterSource::TraceGlobal;
    const auto global = window_scan(trace, sizes, DistKind::Exponential, opts);
    const auto local = window_scan(trace, sizes, DistKind::Exponential);
    // for the full trace both fits coincide
    CHECK(global.results[0].statistic == doctest::Approx(local.results[0].statistic).epsilon(1e-12));
  }

  SUBCASE("mixed sizes are refused") {
    DelayTrace mixed = to_trace(exp_window(60, 1));
    mixed.push_back(DelaySample(1e6, 0.02, 1500));
    const std::size_t sizes[] = {50};
    CHECK(code_of([&] { window_scan(mixed, sizes, DistKind::Exponential); }) == ErrorCode::SizeConflict);
  }
}

TEST_CASE("stationary exponential traces pass at every window size") {
  std::array<int, 7> accepted{};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto trace = to_trace(exp_window(2000, 7000 + seed));
    WindowScanOptions opts;
    opts.d_min = kDmin;
    const auto scan = window_scan(trace, kDefaultWindowSizes, DistKind::Exponential, opts);
    for (std::size_t i = 0; i < 7; ++i) accepted[i] += scan.results[i].accepted;
  }
  for (std::size_t i = 0; i < 7; ++i) {
    CAPTURE(kDefaultWindowSizes[i]);
    CHECK(accepted[i] >= 90);
  }
}
