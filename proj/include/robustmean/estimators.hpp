#pragma once

#include <optional>
#include <span>
#include <vector>

namespace robustmean {

// A validated, ascending-sorted sample. Immutable after construction.
class OrderedSample {
 public:
  explicit OrderedSample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int n() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

struct TrimSpec {
  int k1 = 0;
  int k2 = 0;
};

struct TrimmedSummary {
  double mean = 0.0;
  double variance = 0.0;
  // X_{(n-k2+1)} - X_{(k1)} (1-based); unavailable when k1 = 0 or k2 = 0.
  std::optional<double> width;
  int retained = 0;
};

OrderedSample order(std::span<const double> sample);

// (n-k1-k2)^{-1} sum_{i=k1+1}^{n-k2} X_{(i)}
double trimmed_mean(const OrderedSample& s, TrimSpec t);

// Mean, variance (divided by the retained count, no Bessel correction) and
// width of the trimmed sample.
TrimmedSummary trimmed_summary(const OrderedSample& s, TrimSpec t);

// Median of means over contiguous blocks in input order; the remainder is
// distributed one extra element per block from the front.
double median_of_means(std::span<const double> sample, int blocks);

// Root of sum_i psi((x_i - theta)/scale) with the narrowest Catoni influence
// psi(x) = sign(x) log(1 + |x| + x^2/2), by monotone bisection.
double catoni(std::span<const double> sample, double scale, double tol = 1e-10);

// Interquartile-range based scale guess used as the CLI / experiment default
// for the Catoni estimator (IQR / 1.349, the Gaussian-consistent rescaling).
double robust_scale_guess(const OrderedSample& s);

}  // namespace robustmean
