#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "robustmean/contamination.hpp"
#include "robustmean/distributions.hpp"
#include "robustmean/rng.hpp"

using namespace robustmean;

namespace {

int changed_count(const std::vector<double>& before, const std::vector<double>& after) {
  int c = 0;
  for (std::size_t i = 0; i < before.size(); ++i) c += before[i] != after[i];
  return c;
}

std::vector<double> draw(int n, std::uint64_t seed) {
  UniformStream stream(Seed{seed}, 0);
  return sample(DistributionSpec::student_t(2.5), n, stream);
}

}  // namespace

TEST_CASE("contaminate replaces exactly floor(eps n) positions") {
  const std::vector<double> clean = draw(100, 1);
  for (double eps : {0.0, 0.009, 0.01, 0.049, 0.25}) {
    ContaminationSpec spec;
    spec.eps = eps;
    spec.strategy = ContaminationStrategy::kLargePositive;
    spec.magnitude = 1e6;
    const auto dirty = contaminate(clean, spec, Seed{2});
    CHECK(changed_count(clean, dirty) == static_cast<int>(std::floor(eps * 100)));
  }
}

TEST_CASE("contaminate is deterministic per seed") {
  const std::vector<double> clean = draw(50, 3);
  ContaminationSpec spec;
  spec.eps = 0.2;
  spec.strategy = ContaminationStrategy::kLargeNegative;
  spec.magnitude = 123.0;
  CHECK(contaminate(clean, spec, Seed{5}) == contaminate(clean, spec, Seed{5}));
  CHECK(contaminate(clean, spec, Seed{5}) != contaminate(clean, spec, Seed{6}));
}

TEST_CASE("sign flip negates the largest-magnitude points") {
  const std::vector<double> clean{1.0, -7.0, 2.0, 5.0, -0.5, 3.0, -4.0, 0.1, 6.0, -2.0};
  ContaminationSpec spec;
  spec.eps = 0.3;
  spec.strategy = ContaminationStrategy::kSignFlip;
  const auto dirty = contaminate(clean, spec, Seed{1});
  // The 3 largest magnitudes are -7, 6, 5.
  CHECK(dirty[1] == 7.0);
  CHECK(dirty[8] == -6.0);
  CHECK(dirty[3] == -5.0);
  CHECK(changed_count(clean, dirty) == 3);
}

TEST_CASE("boundary adversary plants the clean (n-k)-th order statistic") {
  const std::vector<double> clean = draw(200, 9);
  std::vector<double> sorted(clean);
  std::sort(sorted.begin(), sorted.end());
  ContaminationSpec spec;
  spec.eps = 0.05;
  spec.strategy = ContaminationStrategy::kBoundaryAdversary;
  spec.k = 12;
  const auto dirty = contaminate(clean, spec, Seed{4});
  const double expected = sorted[200 - 12 - 1];
  int planted = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (dirty[i] != clean[i]) {
      CHECK(dirty[i] == expected);
      ++planted;
    }
  }
  CHECK(planted == 10);
  ContaminationSpec bad = spec;
  bad.k = 0;
  CHECK_THROWS_AS(contaminate(clean, bad, Seed{4}), std::domain_error);
}

TEST_CASE("contaminate validates eps") {
  ContaminationSpec spec;
  spec.eps = 0.5;
  CHECK_THROWS_AS(contaminate(draw(10, 1), spec, Seed{1}), std::domain_error);
  spec.eps = -0.1;
  CHECK_THROWS_AS(contaminate(draw(10, 1), spec, Seed{1}), std::domain_error);
}

TEST_CASE("sandwich and per-index order-statistic claims under random attacks") {
  UniformStream meta(Seed{77}, 0);
  const ContaminationStrategy strategies[] = {
      ContaminationStrategy::kLargePositive, ContaminationStrategy::kLargeNegative,
      ContaminationStrategy::kSignFlip, ContaminationStrategy::kBoundaryAdversary};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 50 + static_cast<int>(meta.next() * 200);
    const double eps = 0.001 + meta.next() * 0.08;
    const int m = static_cast<int>(std::floor(eps * n));
    const int k1 = m + static_cast<int>(meta.next() * 10);
    const int k2 = m + static_cast<int>(meta.next() * 10);
    if (k1 + k2 >= n || k1 < 1 || k2 < 1) continue;
    const std::vector<double> clean = draw(n, 1000 + static_cast<std::uint64_t>(trial));
    ContaminationSpec spec;
    spec.eps = eps;
    spec.strategy = strategies[trial % 4];
    spec.magnitude = (meta.next() - 0.5) * 1e5;
    spec.magnitude = std::fabs(spec.magnitude);
    spec.k = std::max(1, std::min(k1, k2));
    const auto dirty = contaminate(clean, spec, Seed{2000 + static_cast<std::uint64_t>(trial)});
    const OrderedSample cs = order(clean);
    const OrderedSample ds = order(dirty);
    CHECK(sandwich_holds(cs, ds, eps, k1, k2));
    CHECK(order_stat_claim_holds(cs, ds, eps, k1, k2));
  }
}

TEST_CASE("sandwich precondition: trims must dominate the contamination count") {
  const std::vector<double> clean = draw(100, 5);
  const OrderedSample cs = order(clean);
  CHECK_THROWS_AS(sandwich_holds(cs, cs, 0.05, 2, 8), std::domain_error);
  CHECK_THROWS_AS(order_stat_claim_holds(cs, cs, 0.05, 8, 2), std::domain_error);
}
