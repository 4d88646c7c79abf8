#include "robustmean/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace robustmean {
namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  // Tolerance is relative to a first-pass magnitude estimate of |f| (not of
  // the integral, which can vanish by cancellation), floored so a zero
  // integrand still terminates.
  const double whole_abs =
      (b - a) / 6.0 * (std::fabs(fa) + 4.0 * std::fabs(fm) + std::fabs(fb));
  const double scale = std::max({std::fabs(whole), std::fabs(whole_abs), 1e-300});
  return adaptive(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, 30);
}

double integrate_open01(const std::function<double(double)>& f, double rel_tol) {
  // Core chunk plus dyadic shells toward each endpoint.
  double total = integrate(f, 0.25, 0.75, rel_tol);
  for (int side = 0; side < 2; ++side) {
    double prev = std::fabs(total) + 1.0;
    double eps = 0.25;
    int stalled = 0;
    for (int j = 0; j < 400; ++j) {
      const double lo = eps * 0.5, hi = eps;
      const double piece = side == 0 ? integrate(f, lo, hi, rel_tol)
                                     : integrate(f, 1.0 - hi, 1.0 - lo, rel_tol);
      total += piece;
      const double mag = std::fabs(piece);
      if (mag <= rel_tol * std::max(std::fabs(total), 1e-300)) break;
      if (mag >= prev) {
        if (++stalled > 60) throw std::domain_error("integrate_open01: integral diverges");
      } else {
        stalled = 0;
      }
      prev = mag;
      eps *= 0.5;
      if (j == 399) throw std::domain_error("integrate_open01: endpoint shells did not converge");
    }
  }
  return total;
}

}  // namespace robustmean
