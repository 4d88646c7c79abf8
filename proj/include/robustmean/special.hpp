#pragma once

namespace robustmean {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

// Inverse of I_x(a, b) in x for fixed (a, b); p in [0, 1].
double incomplete_beta_inv(double a, double b, double p);

// CDF of Binomial(n, prob) at k, i.e. P(X <= k).
double binomial_cdf(int k, int n, double prob);

}  // namespace robustmean
