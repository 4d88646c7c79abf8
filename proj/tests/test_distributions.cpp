#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "robustmean/distributions.hpp"
#include "robustmean/rng.hpp"

using namespace robustmean;

namespace {

const std::vector<DistributionSpec> kFamilies = {
    DistributionSpec::uniform(0.0, 1.0),
    DistributionSpec::uniform(-2.0, 5.0),
    DistributionSpec::normal(0.0, 1.0),
    DistributionSpec::normal(3.0, 0.5),
    DistributionSpec::student_t(3.0),
    DistributionSpec::student_t(2.5, 1.0, 2.0),
    DistributionSpec::pareto(3.0, 1.0),
    DistributionSpec::pareto(3.0, 1.0, true),
    DistributionSpec::lognormal(0.0, 1.0),
    DistributionSpec::empirical({3.0, 1.0, 4.0, 1.0, 5.0}),
};

}  // namespace

TEST_CASE("quantile is nondecreasing and inverts the cdf") {
  for (const auto& d : kFamilies) {
    double prev = -INFINITY;
    for (double u = 0.01; u < 1.0; u += 0.01) {
      const double q = quantile(d, u);
      CHECK(q >= prev);
      prev = q;
      if (d.family != DistributionSpec::Family::kEmpirical) {
        CHECK(cdf(d, q) == doctest::Approx(u).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("quantile rejects endpoints") {
  CHECK_THROWS_AS(quantile(DistributionSpec::normal(0.0, 1.0), 0.0), std::domain_error);
  CHECK_THROWS_AS(quantile(DistributionSpec::normal(0.0, 1.0), 1.0), std::domain_error);
}

TEST_CASE("student-t quantile reference values") {
  // Frozen from the closed forms: t_2 quantile is (2u-1)/sqrt(2u(1-u)); t_1
  // is tan(pi(u - 1/2)); dof 4 value from the cubic-resolvent closed form.
  const auto t1 = DistributionSpec::student_t(1.0);
  CHECK(quantile(t1, 0.75) == doctest::Approx(1.0).epsilon(1e-13));
  const auto t2 = DistributionSpec::student_t(2.0);
  CHECK(quantile(t2, 0.9) == doctest::Approx(1.8856180831641267).epsilon(1e-13));
  const auto t4 = DistributionSpec::student_t(4.0);
  // q(0.95; dof 4) = sqrt(4 (1/sqrt(a) - 1)) with a = cos((1/3) acos(sqrt(a0)))^2...
  // frozen from an independent high-precision evaluation:
  CHECK(quantile(t4, 0.95) == doctest::Approx(2.13184678632665).epsilon(1e-10));
  CHECK(cdf(t4, quantile(t4, 0.999)) == doctest::Approx(0.999).epsilon(1e-11));
  // Deep tail round trip, where 1 - u underflows any naive formulation.
  const auto t3 = DistributionSpec::student_t(3.0);
  for (double u : {1e-10, 1e-6, 1e-3, 0.2, 0.8, 1.0 - 1e-6}) {
    CHECK(cdf(t3, quantile(t3, u)) == doctest::Approx(u).epsilon(1e-9));
  }
}

TEST_CASE("sampling is inverse-transform and deterministic per seed") {
  const auto d = DistributionSpec::lognormal(0.0, 1.0);
  UniformStream s1(Seed{7}, 0);
  UniformStream s2(Seed{7}, 0);
  const auto a = sample(d, 100, s1);
  std::vector<double> b;
  for (int i = 0; i < 100; ++i) b.push_back(quantile(d, s2.next()));
  CHECK(a == b);
  UniformStream s3(Seed{8}, 0);
  CHECK(sample(d, 100, s3) != a);
}

TEST_CASE("moment profile matches closed forms") {
  const auto norm = moment_profile(DistributionSpec::normal(2.0, 3.0), {4.0});
  CHECK(norm.mean.value() == doctest::Approx(2.0));
  CHECK(norm.sigma.value() == doctest::Approx(3.0).epsilon(1e-12));
  // nu_4 = sd * (E|Z|^4)^{1/4} = 3 * 3^{1/4}
  CHECK(norm.nu.at(4.0).value() == doctest::Approx(3.0 * std::pow(3.0, 0.25)).epsilon(1e-12));
  CHECK(norm.kappa_2p.at(4.0).value() == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-12));

  const auto t3 = moment_profile(DistributionSpec::student_t(3.0), {2.5, 3.0, 4.0});
  CHECK(t3.mean.value() == doctest::Approx(0.0));
  CHECK(t3.sigma.value() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(t3.nu.at(2.5).is_finite());
  CHECK(t3.nu.at(3.0).is_infinite());
  CHECK(t3.nu.at(4.0).is_infinite());

  const auto t1 = moment_profile(DistributionSpec::student_t(1.0), {2.0});
  CHECK(t1.mean.is_undefined());

  const auto par = moment_profile(DistributionSpec::pareto(3.0, 1.0), {2.5, 3.0});
  CHECK(par.mean.value() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(par.sigma.value() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-8));
  CHECK(par.nu.at(2.5).is_finite());
  CHECK(par.nu.at(3.0).is_infinite());
  const auto heavy = moment_profile(DistributionSpec::pareto(0.9, 1.0), {2.0});
  CHECK(heavy.mean.is_infinite());

  const double e = std::exp(1.0);
  const auto ln = moment_profile(DistributionSpec::lognormal(0.0, 1.0), {4.0});
  CHECK(ln.mean.value() == doctest::Approx(std::sqrt(e)).epsilon(1e-12));
  CHECK(ln.sigma.value() == doctest::Approx(std::sqrt((e - 1.0) * e)).epsilon(1e-8));
  // E(X - mu)^4 = sum_j C(4,j) (-mu)^{4-j} e^{j^2/2}: frozen expansion below.
  const double mu = std::sqrt(e);
  const double m4 = std::exp(8.0) - 4.0 * mu * std::exp(4.5) + 6.0 * mu * mu * std::exp(2.0) -
                    4.0 * mu * mu * mu * std::exp(0.5) + mu * mu * mu * mu;
  CHECK(ln.nu.at(4.0).value() == doctest::Approx(std::pow(m4, 0.25)).epsilon(1e-7));

  const auto emp = moment_profile(DistributionSpec::empirical({1.0, 2.0, 6.0}), {3.0});
  CHECK(emp.mean.value() == doctest::Approx(3.0));
  CHECK(emp.sigma.value() == doctest::Approx(std::sqrt(14.0 / 3.0)).epsilon(1e-13));
  CHECK(emp.nu.at(3.0).value() ==
        doctest::Approx(std::pow((8.0 + 1.0 + 27.0) / 3.0, 1.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("rho oracle endpoints and monotonicity") {
  for (const auto& d : {DistributionSpec::uniform(0.0, 1.0), DistributionSpec::normal(0.0, 1.0),
                        DistributionSpec::lognormal(0.0, 0.5)}) {
    CHECK(rho_oracle(d, 2.0, 0.0) == 0.0);
    CHECK(rho_oracle(d, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
    double prev = 0.0;
    for (double xi : {0.01, 0.05, 0.1, 0.3, 0.6, 0.9}) {
      const double r = rho_oracle(d, 2.0, xi);
      CHECK(r >= prev - 1e-9);
      CHECK(r <= 1.0);
      prev = r;
    }
  }
}

TEST_CASE("rho oracle closed-form fixture: uniform, p=2, xi=1/2") {
  // Heaviest half of |U - 1/2| is the union of the two outer quarters:
  // 2 int_{1/4}^{1/2} t^2 dt = 7/96; nu_2^2 = 1/12; ratio^{1/2} = sqrt(7/8).
  const double r = rho_oracle(DistributionSpec::uniform(0.0, 1.0), 2.0, 0.5);
  CHECK(r == doctest::Approx(std::sqrt(0.875)).epsilon(1e-7));
}

TEST_CASE("rho oracle: empirical greedy matches hand computation") {
  // |x - mean| for {0, 0, 0, 0, 10}: mean 2, deviations {2,2,2,2,8}.
  // xi = 0.2 takes exactly the single heaviest atom: rho^p nu_p^p = 8^2/5.
  const auto d = DistributionSpec::empirical({0.0, 0.0, 0.0, 0.0, 10.0});
  const double nu2 = moment_profile(d, {2.0}).sigma.value();
  const double r = rho_oracle(d, 2.0, 0.2);
  CHECK(r * r * nu2 * nu2 == doctest::Approx(64.0 / 5.0).epsilon(1e-12));
  // Fractional boundary atom: xi = 0.3 adds half of a weight-2 atom.
  const double r3 = rho_oracle(d, 2.0, 0.3);
  CHECK(r3 * r3 * nu2 * nu2 == doctest::Approx((64.0 + 0.5 * 4.0) / 5.0).epsilon(1e-12));
}

TEST_CASE("rho oracle respects the Hoelder envelope") {
  // For q < p: rho_{F,q}(xi) nu_q <= (rho_{F,p}(xi) nu_p)^{q/p} restated with
  // the mass factor xi^{1/q - 1/p}.
  for (const auto& d : {DistributionSpec::normal(0.0, 1.0), DistributionSpec::lognormal(0.0, 1.0)}) {
    const auto prof = moment_profile(d, {2.0, 4.0});
    for (double xi : {0.05, 0.2, 0.5}) {
      const double lhs = rho_oracle(d, 2.0, xi) * prof.sigma.value();
      const double rhs = rho_oracle(d, 4.0, xi) * prof.nu.at(4.0).value() *
                         std::pow(xi, 0.5 - 0.25);
      CHECK(lhs <= rhs * (1.0 + 1e-7));
    }
  }
}

TEST_CASE("trimmed population: uniform window closed form") {
  const auto tp = trimmed_population(DistributionSpec::uniform(0.0, 1.0), 0.1, 0.9, {4.0});
  CHECK(tp.mu == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(tp.sigma * tp.sigma == doctest::Approx(0.8 * 0.8 / 12.0).epsilon(1e-10));
  CHECK(tp.delta == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(tp.xi == doctest::Approx(0.2).epsilon(1e-15));
  // nu_4^4 over the window = central fourth moment of U(0.1, 0.9) = 0.8^4/80.
  const double nu4 = tp.nu.at(4.0);
  CHECK(nu4 * nu4 * nu4 * nu4 == doctest::Approx(std::pow(0.8, 4.0) / 80.0).epsilon(1e-9));
}

TEST_CASE("trimmed population agrees with conditional Monte Carlo") {
  const auto d = DistributionSpec::lognormal(0.0, 0.5);
  const double a = 0.1, b = 0.9;
  const auto tp = trimmed_population(d, a, b, {});
  UniformStream stream(Seed{11}, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += quantile(d, a + (b - a) * stream.next());
  const double mc = sum / n;
  const double se = tp.sigma / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(mc - tp.mu) <= 4.0 * se);
}

TEST_CASE("population bound check flags inapplicable entries, never violations") {
  for (const auto& d : kFamilies) {
    for (auto [a, b] : {std::pair{0.1, 0.9}, std::pair{0.25, 0.75}, std::pair{0.05, 0.8}}) {
      const auto report = population_bound_check(d, a, b, 4.0, 2.0);
      CHECK(report.entries.size() == 5);
      CHECK(report.all_satisfied());
    }
  }
  const auto t3 = population_bound_check(DistributionSpec::student_t(3.0), 0.1, 0.9, 4.0, 2.0);
  for (const auto& e : t3.entries) {
    if (e.name == "bias" || e.name == "trimmed_moment") CHECK_FALSE(e.applicable);
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(DistributionSpec::uniform(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec::normal(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec::student_t(0.0), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec::pareto(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec::empirical({}), std::domain_error);
  CHECK_THROWS_AS(trimmed_population(DistributionSpec::normal(0.0, 1.0), 0.0, 0.9, {}),
                  std::domain_error);
  CHECK_THROWS_AS(rho_oracle(DistributionSpec::normal(0.0, 1.0), 2.0, 1.5),
                  std::domain_error);
  CHECK_THROWS_AS(rho_oracle(DistributionSpec::student_t(2.0), 2.0, 0.5),
                  std::domain_error);  // infinite variance
}
