#pragma once

#include <span>
#include <vector>

#include "robustmean/estimators.hpp"
#include "robustmean/rng.hpp"

namespace robustmean {

enum class ContaminationStrategy {
  kNone,
  kLargePositive,   // replace with +magnitude
  kLargeNegative,   // replace with -magnitude
  kSignFlip,        // negate the floor(eps n) largest-magnitude points
  kBoundaryAdversary,  // replace with the clean (n-k)-th order statistic
};

struct ContaminationSpec {
  double eps = 0.0;  // fraction in [0, 1/2); exactly floor(eps n) points change
  ContaminationStrategy strategy = ContaminationStrategy::kNone;
  double magnitude = 0.0;  // for large_positive / large_negative
  int k = 0;               // trimming parameter targeted by the boundary adversary
};

// Returns a copy of `sample` with exactly floor(eps n) positions replaced,
// positions drawn without replacement from the seed.
std::vector<double> contaminate(std::span<const double> sample,
                                const ContaminationSpec& spec, Seed seed);
std::vector<double> contaminate(std::span<const double> sample,
                                const ContaminationSpec& spec, UniformStream& stream);

// Order-statistics sandwich: the contaminated (k1,k2)-trimmed mean must lie
// between the clean (k1-m, k2+m) and (k1+m, k2-m) trimmed means where
// m = floor(eps n). Requires min{k1, k2} >= m.
bool sandwich_holds(const OrderedSample& clean, const OrderedSample& contaminated,
                    double eps, int k1, int k2);

// Per-index order-statistic claim: X_{(i-m)} <= X^eps_{(i)} <= X_{(i+m)} for
// every i in the trimmed range.
bool order_stat_claim_holds(const OrderedSample& clean, const OrderedSample& contaminated,
                            double eps, int k1, int k2);

}  // namespace robustmean
