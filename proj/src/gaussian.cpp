#include "robustmean/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace robustmean {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Acklam's rational approximation for the normal quantile, used only as the
// starting point for Halley refinement against std_normal_cdf.
double quantile_initial_guess(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("std_normal_cdf: non-finite input");
  return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile: p must lie strictly in (0,1)");
  }
  double x = quantile_initial_guess(p);
  // Halley steps against the CDF itself; each step roughly triples the
  // number of correct digits.
  for (int i = 0; i < 3; ++i) {
    const double err = std_normal_cdf(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / kSqrt2Pi;
    if (pdf == 0.0) break;
    const double u = err / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  if (std::fabs(std_normal_cdf(x) - p) > 1e-10) {
    // Fallback: monotone bisection, cannot fail.
    double lo = -40.0, hi = 40.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (std_normal_cdf(mid) < p ? lo : hi) = mid;
    }
    x = 0.5 * (lo + hi);
  }
  return x;
}

std::pair<double, double> tail_perturbation_bounds(double x, double h) {
  if (!(x >= 0.0) || !std::isfinite(h)) {
    throw std::domain_error("tail_perturbation_bounds: need x >= 0 and finite h");
  }
  const double m = std::max(x, 1.0);
  if (std::fabs(h) > 1.0 / (3.0 * m) + 1e-15) {
    throw std::domain_error("tail_perturbation_bounds: |h| exceeds 1/(3 max{x,1})");
  }
  const double e = 3.0 * std::fabs(h) * m;
  return {std::exp(-e), std::exp(e)};
}

}  // namespace robustmean
