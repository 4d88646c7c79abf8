#pragma once

#include <functional>

namespace robustmean {

// Adaptive Simpson quadrature of f over [a, b] to the given relative
// tolerance. The integrand must be finite on the closed interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

// Integral of f over the open interval (0, 1) where f may blow up at either
// endpoint (but must be integrable). The interval is split into dyadic
// shells toward 0 and 1; shells are added until their contribution is
// negligible. Throws std::domain_error if the shell sums fail to converge
// (divergent integral).
double integrate_open01(const std::function<double(double)>& f,
                        double rel_tol = 1e-10);

}  // namespace robustmean
