#include "robustmean/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace robustmean {
namespace {

// floor(eps n) indices drawn without replacement (partial Fisher-Yates).
std::vector<int> pick_positions(int n, int count, UniformStream& stream) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(stream.next() * static_cast<double>(n - i));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(std::min(j, n - 1))]);
  }
  idx.resize(static_cast<std::size_t>(count));
  return idx;
}

}  // namespace

std::vector<double> contaminate(std::span<const double> sample,
                                const ContaminationSpec& spec, UniformStream& stream) {
  if (!(spec.eps >= 0.0 && spec.eps < 0.5)) {
    throw std::domain_error("contaminate: eps outside [0, 1/2)");
  }
  const int n = static_cast<int>(sample.size());
  std::vector<double> out(sample.begin(), sample.end());
  const int count = static_cast<int>(std::floor(spec.eps * n));
  if (count == 0 || spec.strategy == ContaminationStrategy::kNone) return out;

  if (spec.strategy == ContaminationStrategy::kSignFlip) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + count, idx.end(), [&](int a, int b) {
      return std::fabs(sample[static_cast<std::size_t>(a)]) >
             std::fabs(sample[static_cast<std::size_t>(b)]);
    });
    for (int i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] *= -1.0;
    }
    return out;
  }

  double replacement = 0.0;
  switch (spec.strategy) {
    case ContaminationStrategy::kLargePositive:
      if (!std::isfinite(spec.magnitude)) throw std::domain_error("contaminate: non-finite magnitude");
      replacement = spec.magnitude;
      break;
    case ContaminationStrategy::kLargeNegative:
      if (!std::isfinite(spec.magnitude)) throw std::domain_error("contaminate: non-finite magnitude");
      replacement = -spec.magnitude;
      break;
    case ContaminationStrategy::kBoundaryAdversary: {
      // Sits just inside the trimming threshold of a k-trimmed mean so it is
      // retained, maximizing upward bias.
      if (spec.k < 1 || spec.k >= n) {
        throw std::domain_error("contaminate: boundary adversary needs 1 <= k < n");
      }
      std::vector<double> sorted(sample.begin(), sample.end());
      std::sort(sorted.begin(), sorted.end());
      replacement = sorted[static_cast<std::size_t>(n - spec.k - 1)];  // (n-k)-th order stat
      break;
    }
    default:
      break;
  }
  for (int pos : pick_positions(n, count, stream)) {
    out[static_cast<std::size_t>(pos)] = replacement;
  }
  return out;
}

std::vector<double> contaminate(std::span<const double> sample,
                                const ContaminationSpec& spec, Seed seed) {
  UniformStream stream(seed, 0);
  return contaminate(sample, spec, stream);
}

bool sandwich_holds(const OrderedSample& clean, const OrderedSample& contaminated,
                    double eps, int k1, int k2) {
  const int n = clean.n();
  if (contaminated.n() != n) throw std::domain_error("sandwich_holds: sample sizes differ");
  const int m = static_cast<int>(std::floor(eps * n));
  if (std::min(k1, k2) < m) {
    throw std::domain_error("sandwich_holds: need min{k1,k2} >= floor(eps n)");
  }
  if (k1 + k2 >= n) throw std::domain_error("sandwich_holds: k1 + k2 must be < n");
  const double lower = trimmed_mean(clean, {k1 - m, k2 + m});
  const double upper = trimmed_mean(clean, {k1 + m, k2 - m});
  const double mid = trimmed_mean(contaminated, {k1, k2});
  constexpr double kSlack = 1e-12;
  return lower - kSlack <= mid && mid <= upper + kSlack;
}

bool order_stat_claim_holds(const OrderedSample& clean, const OrderedSample& contaminated,
                            double eps, int k1, int k2) {
  const int n = clean.n();
  if (contaminated.n() != n) throw std::domain_error("order_stat_claim_holds: sizes differ");
  const int m = static_cast<int>(std::floor(eps * n));
  if (std::min(k1, k2) < m) {
    throw std::domain_error("order_stat_claim_holds: need min{k1,k2} >= floor(eps n)");
  }
  const auto& x = clean.values();
  const auto& y = contaminated.values();
  for (int i = k1 + 1; i <= n - k2; ++i) {  // 1-based trimmed index range
    const double lo = x[static_cast<std::size_t>(i - m - 1)];
    const double hi = x[static_cast<std::size_t>(i + m - 1)];
    const double mid = y[static_cast<std::size_t>(i - 1)];
    if (!(lo <= mid && mid <= hi)) return false;
  }
  return true;
}

}  // namespace robustmean
