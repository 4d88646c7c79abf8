#pragma once

#include <utility>

namespace robustmean {

// Standard normal CDF. Absolute error below 1e-14; throws on non-finite input.
double std_normal_cdf(double x);

// Inverse of std_normal_cdf on (0, 1). |Phi(result) - p| <= 1e-10.
double std_normal_quantile(double p);

// Two-sided bound on the Gaussian tail ratio (1-Phi(x+h))/(1-Phi(x)):
// returns (exp(-3|h| max{x,1}), exp(+3|h| max{x,1})).
// Requires x >= 0 and |h| <= 1/(3 max{x,1}).
std::pair<double, double> tail_perturbation_bounds(double x, double h);

}  // namespace robustmean
