#include <doctest.h>

#include <cmath>

#include "netdelay/special.hpp"
#include "oracles.hpp"

using namespace netdelay;

TEST_CASE("erf matches the platform erf to 1e-14 absolute") {
  double worst = 0.0;
  for (double x = -7.0; x <= 7.0; x += 1e-3) {
    worst = std::max(worst, std::fabs(special::erf(x) - std::erf(x)));
    worst = std::max(worst, std::fabs(special::erfc(x) - std::erfc(x)));
  }
  CHECK(worst < 1e-14);
  CHECK(special::erf(0.0) == 0.0);
  CHECK(special::erf(40.0) == 1.0);
  CHECK(special::erfc(40.0) == 0.0);
}

TEST_CASE("erfc keeps relative accuracy in the tail") {
  for (double x = 2.5; x < 26.0; x += 0.37)
    CHECK(special::erfc(x) == doctest::Approx(std::erfc(x)).epsilon(1e-12));
}

TEST_CASE("normal quantile") {
  CHECK(special::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(special::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-11));
  CHECK(special::normal_quantile(0.05) == doctest::Approx(-1.6448536269514729).epsilon(1e-11));
  CHECK(std::isnan(special::normal_quantile(1.0)));
}

TEST_CASE("log gamma at half integers") {
  for (int n = 1; n <= 80; ++n)
    CHECK(special::log_gamma_half(n) == doctest::Approx(std::lgamma(0.5 * n)).epsilon(1e-13).scale(1.0));
}

TEST_CASE("chi-square CDF agrees with Simpson integration of the density") {
  for (int df : {1, 2, 3, 7, 13, 26, 60}) {
    for (double x : {0.1, 1.0, 5.0, 0.8 * df, 1.0 * df, 1.6 * df + 3, 3.0 * df + 10}) {
      CAPTURE(df);
      CAPTURE(x);
      CHECK(special::chi_square_cdf(df, x) == doctest::Approx(oracle::chi_square_cdf_simpson(df, x)).epsilon(1e-9).scale(1.0));
    }
  }
  CHECK(special::chi_square_cdf(4, 0.0) == 0.0);
  // df = 2 is the exponential with mean 2
  CHECK(special::chi_square_cdf(2, 3.0) == doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-14));
}
