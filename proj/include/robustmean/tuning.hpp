#pragma once

#include <optional>
#include <string>

#include "robustmean/estimators.hpp"

namespace robustmean {

enum class PlanRegime { kAll, kSharper, kMultiple, kPrecise, kContaminated };

struct Interval {
  double center = 0.0;
  double half_width = 0.0;
};

struct ConfidencePlan {
  PlanRegime regime = PlanRegime::kAll;
  double x = 0.0;
  int k1 = 0;
  int k2 = 0;
  double half_width = 0.0;            // scaled by sigma (or sigma-hat) already
  double failure_bound = 1.0;         // probability of missing the interval
  std::optional<double> certificate;  // a (sharper), gamma (precise), d (contaminated)
  bool feasible = true;
};

// Trimming parameter k(x) = ceil(x^2 / 2).
int k_for_tail(double x);

// Finite-variance plan: half-width (3 sqrt 2 + 8 + (4 + 4 sqrt 2) x) sigma / sqrt n,
// failure bound 4 exp(-x^2/2), valid for 0 < x <= sqrt(n/(sqrt 2 + 1)^2 - 2).
ConfidencePlan plan_all_subgaussian(double x, int n, double sigma);

// Sharper-constant plan under a p-th moment ratio bound; infeasible (with the
// minimal certificate a reported) when the required a reaches 1.
ConfidencePlan plan_sharper(double x, int n, double p, double kappa, double sigma);

// Largest k usable for every confidence level x <= sqrt(2k) at once, or
// nullopt when even k = 1 fails the feasibility display.
std::optional<int> k_multiple(long long n, double p, double kappa);

struct ContaminatedPlan {
  int k = 0;
  double d = 0.0;
  bool feasible = false;
};

// k = floor(eps n) + ceil(log(4/alpha)); feasible iff the associated d < 1
// and 2k < n.
ContaminatedPlan k_contaminated(int n, double eps, double alpha);

// Two-sided CI plan: x = Phi^{-1}(1 - alpha/2),
// k = max{2, ceil(log(4/(delta (1 - Phi(x)))))},
// gamma = kappa k^{(7p-8)/(4p-4)} / n^{(p-2)/(4p-4)}; feasible iff
// gamma < 1 / C_universal.
ConfidencePlan precise_ci_plan(long long n, double alpha, double delta, double p,
                               double kappa, double c_universal);

// Interval centered at the (k,k)-trimmed mean with half-width
// x sigma-hat / sqrt n.
Interval ci_from_sample(const OrderedSample& s, const ConfidencePlan& plan);

// h(xi, v) = (1 - xi)^{-3/2} - 1 + sqrt(2) v / (1 - xi)
double h_function(double xi_star, double v);

// v_* = 6 kappa (k/n)^{(p-2)/(4p-4)}
double v_star(long long n, int k, double p, double kappa);

std::string regime_name(PlanRegime regime);

}  // namespace robustmean
