#include "robustmean/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robustmean {
namespace {

void check_trim(int n, TrimSpec t) {
  if (t.k1 < 0 || t.k2 < 0) throw std::domain_error("trim counts must be nonnegative");
  if (t.k1 + t.k2 >= n) {
    throw std::domain_error("k1 + k2 = " + std::to_string(t.k1 + t.k2) +
                            " must be < n = " + std::to_string(n));
  }
}

}  // namespace

OrderedSample::OrderedSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::domain_error("OrderedSample: sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::domain_error("OrderedSample: non-finite value at index " +
                              std::to_string(i));
    }
  }
  std::stable_sort(values_.begin(), values_.end());
}

OrderedSample order(std::span<const double> sample) {
  return OrderedSample(std::vector<double>(sample.begin(), sample.end()));
}

double trimmed_mean(const OrderedSample& s, TrimSpec t) {
  check_trim(s.n(), t);
  const auto& v = s.values();
  double sum = 0.0;
  for (int i = t.k1; i < s.n() - t.k2; ++i) sum += v[i];
  return sum / static_cast<double>(s.n() - t.k1 - t.k2);
}

TrimmedSummary trimmed_summary(const OrderedSample& s, TrimSpec t) {
  check_trim(s.n(), t);
  const auto& v = s.values();
  TrimmedSummary out;
  out.retained = s.n() - t.k1 - t.k2;
  out.mean = trimmed_mean(s, t);
  double ss = 0.0;
  for (int i = t.k1; i < s.n() - t.k2; ++i) {
    const double d = v[i] - out.mean;
    ss += d * d;
  }
  out.variance = ss / static_cast<double>(out.retained);
  if (t.k1 >= 1 && t.k2 >= 1) {
    out.width = v[s.n() - t.k2] - v[t.k1 - 1];  // X_{(n-k2+1)} - X_{(k1)}
  }
  return out;
}

double median_of_means(std::span<const double> sample, int blocks) {
  const int n = static_cast<int>(sample.size());
  if (n == 0) throw std::domain_error("median_of_means: empty sample");
  if (blocks < 1 || blocks > n) {
    throw std::domain_error("median_of_means: blocks must lie in [1, n]");
  }
  const int base = n / blocks;
  const int extra = n % blocks;
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(blocks));
  int pos = 0;
  for (int b = 0; b < blocks; ++b) {
    const int len = base + (b < extra ? 1 : 0);
    double sum = 0.0;
    for (int i = 0; i < len; ++i) sum += sample[static_cast<std::size_t>(pos + i)];
    means.push_back(sum / static_cast<double>(len));
    pos += len;
  }
  std::sort(means.begin(), means.end());
  const int m = blocks;
  return m % 2 == 1 ? means[static_cast<std::size_t>(m / 2)]
                    : 0.5 * (means[static_cast<std::size_t>(m / 2 - 1)] +
                             means[static_cast<std::size_t>(m / 2)]);
}

double catoni(std::span<const double> sample, double scale, double tol) {
  if (sample.size() < 2) throw std::domain_error("catoni: need n >= 2");
  if (!(scale > 0.0)) throw std::domain_error("catoni: scale must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("catoni: tol must be > 0");
  auto psi = [](double x) {
    const double ax = std::fabs(x);
    const double v = std::log1p(ax + 0.5 * x * x);
    return x >= 0.0 ? v : -v;
  };
  auto objective = [&](double theta) {
    double s = 0.0;
    for (double x : sample) s += psi((x - theta) / scale);
    return s;  // strictly decreasing in theta
  };
  double lo = *std::min_element(sample.begin(), sample.end());
  double hi = *std::max_element(sample.begin(), sample.end());
  if (lo == hi) return lo;
  for (int i = 0; i < 10000 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (objective(mid) > 0.0 ? lo : hi) = mid;
  }
  if (hi - lo > tol) throw std::runtime_error("catoni: bisection failed to converge");
  return 0.5 * (lo + hi);
}

double robust_scale_guess(const OrderedSample& s) {
  const auto& v = s.values();
  const auto at_quantile = [&](double q) {
    const double idx = q * static_cast<double>(s.n() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min<std::size_t>(lo + 1, v.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
  };
  const double iqr = at_quantile(0.75) - at_quantile(0.25);
  return iqr > 0.0 ? iqr / 1.349 : 1.0;
}

}  // namespace robustmean
