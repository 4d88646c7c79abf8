#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "robustmean/gaussian.hpp"

using namespace robustmean;

namespace {

// Independent oracle: erf by Maclaurin series, 60 terms, accurate to ~1e-15
// for |z| <= 3.
double erf_series(double z) {
  double term = z;
  double sum = z;
  for (int n = 1; n < 60; ++n) {
    term *= -z * z / n;
    sum += term / (2.0 * n + 1.0);
  }
  return sum * 2.0 / std::sqrt(M_PI);
}

double cdf_oracle(double x) { return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0))); }

}  // namespace

TEST_CASE("cdf matches a series oracle on [-3, 3]") {
  for (double x = -3.0; x <= 3.0 + 1e-12; x += 0.125) {
    CHECK(std_normal_cdf(x) == doctest::Approx(cdf_oracle(x)).epsilon(1e-13));
  }
}

TEST_CASE("cdf reference values") {
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-13));
  CHECK(std_normal_cdf(-1.96) == doctest::Approx(0.024997895148220435).epsilon(1e-12));
  CHECK(std_normal_cdf(5.0) == doctest::Approx(0.9999997133484281).epsilon(1e-13));
}

TEST_CASE("cdf symmetry and monotonicity") {
  double prev = -1.0;
  for (double x = -10.0; x <= 10.0; x += 0.25) {
    const double p = std_normal_cdf(x);
    CHECK(p + std_normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("cdf rejects non-finite input") {
  CHECK_THROWS_AS(std_normal_cdf(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(std_normal_cdf(INFINITY), std::domain_error);
}

TEST_CASE("quantile inverts the cdf") {
  // Above x ~ 5.5 the forward map is flat at double precision (1 - Phi(x)
  // below ~1e-8 relative to 1), so the inversion is ill-posed by rounding of
  // p alone; the far negative tail stays well-conditioned because small p is
  // represented to full relative precision.
  for (double x = -8.0; x <= 5.0 + 1e-12; x += 0.25) {
    const double p = std_normal_cdf(x);
    if (p <= 0.0 || p >= 1.0) continue;
    CHECK(std_normal_quantile(p) == doctest::Approx(x).epsilon(1e-9));
  }
  for (double p = 1e-12; p < 1.0; p = p < 0.1 ? p * 10.0 : p + 0.1) {
    CHECK(std_normal_cdf(std_normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("quantile reference values") {
  CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-11));
  CHECK(std_normal_quantile(0.975) + std_normal_quantile(0.025) ==
        doctest::Approx(0.0).epsilon(1e-11));
  CHECK(std_normal_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("quantile rejects endpoints") {
  CHECK_THROWS_AS(std_normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(-0.5), std::domain_error);
}

TEST_CASE("tail perturbation bounds bracket the true tail ratio") {
  for (double x = 0.0; x <= 5.0 + 1e-12; x += 0.5) {
    const double m = std::max(x, 1.0);
    for (double h : {1.0 / (6.0 * m), -1.0 / (6.0 * m), 1.0 / (3.0 * m),
                     -1.0 / (3.0 * m), 0.0}) {
      const auto [lo, hi] = tail_perturbation_bounds(x, h);
      const double ratio = (1.0 - std_normal_cdf(x + h)) / (1.0 - std_normal_cdf(x));
      CHECK(lo <= ratio);
      CHECK(ratio <= hi);
      CHECK(lo == doctest::Approx(std::exp(-3.0 * std::fabs(h) * m)).epsilon(1e-14));
      CHECK(hi == doctest::Approx(std::exp(3.0 * std::fabs(h) * m)).epsilon(1e-14));
    }
  }
}

TEST_CASE("tail perturbation bounds reject h outside the admissible range") {
  CHECK_THROWS_AS(tail_perturbation_bounds(2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(tail_perturbation_bounds(0.0, -0.4), std::domain_error);
}
