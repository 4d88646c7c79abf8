#include "robustmean/tuning.hpp"

#include <cmath>
#include <stdexcept>

#include "robustmean/gaussian.hpp"

namespace robustmean {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

double tail_failure(double x) { return 4.0 * std::exp(-0.5 * x * x); }

}  // namespace

int k_for_tail(double x) {
  if (!(x > 0.0)) throw std::domain_error("k_for_tail: x must be > 0");
  return static_cast<int>(std::ceil(0.5 * x * x));
}

ConfidencePlan plan_all_subgaussian(double x, int n, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("plan_all_subgaussian: sigma must be > 0");
  const double range2 = static_cast<double>(n) / ((kSqrt2 + 1.0) * (kSqrt2 + 1.0)) - 2.0;
  if (!(x > 0.0) || range2 <= 0.0 || x > std::sqrt(range2)) {
    throw std::domain_error("plan_all_subgaussian: x must lie in (0, sqrt(n/(sqrt2+1)^2 - 2)]");
  }
  ConfidencePlan plan;
  plan.regime = PlanRegime::kAll;
  plan.x = x;
  plan.k1 = plan.k2 = k_for_tail(x);
  plan.half_width =
      (3.0 * kSqrt2 + 8.0 + (4.0 + 4.0 * kSqrt2) * x) * sigma / std::sqrt(n);
  plan.failure_bound = std::min(1.0, tail_failure(x));
  return plan;
}

ConfidencePlan plan_sharper(double x, int n, double p, double kappa, double sigma) {
  if (!(p > 2.0) || !(kappa >= 1.0)) {
    throw std::domain_error("plan_sharper: need p > 2 and kappa >= 1");
  }
  if (!(sigma > 0.0)) throw std::domain_error("plan_sharper: sigma must be > 0");
  const double range2 = static_cast<double>(n) / ((kSqrt2 + 1.0) * (kSqrt2 + 1.0)) - 2.0;
  if (!(x > 0.0) || range2 <= 0.0 || x > std::sqrt(range2)) {
    throw std::domain_error("plan_sharper: x outside the admissible range");
  }
  const double rootn = std::sqrt(static_cast<double>(n));
  const double a_min = 216.0 * kSqrt2 * (1.0 + x) * (1.0 + x) / static_cast<double>(n) +
                       24.0 * kappa * std::pow((1.0 + x) / rootn, (p - 2.0) / (2.0 * p - 2.0));
  ConfidencePlan plan;
  plan.regime = PlanRegime::kSharper;
  plan.x = x;
  plan.k1 = plan.k2 = k_for_tail(x);
  plan.certificate = a_min;
  plan.feasible = a_min < 1.0;
  plan.half_width = plan.feasible
                        ? sigma * (a_min * kSqrt2 + (1.0 + a_min) * x) / rootn
                        : 0.0;
  plan.failure_bound = std::min(1.0, tail_failure(x));
  return plan;
}

std::optional<int> k_multiple(long long n, double p, double kappa) {
  if (n < 1) throw std::domain_error("k_multiple: n must be >= 1");
  if (!(p > 2.0) || !(kappa >= 1.0)) {
    throw std::domain_error("k_multiple: need p > 2 and kappa >= 1");
  }
  const double nn = static_cast<double>(n);
  auto lhs = [&](double k) {
    return 432.0 * std::pow(k, 1.5) / nn +
           24.0 * kSqrt2 * kappa * std::pow(k, (3.0 * p - 4.0) / (4.0 * p - 4.0)) /
               std::pow(nn, (p - 2.0) / (4.0 * p - 4.0));
  };
  if (lhs(1.0) > 1.0) return std::nullopt;
  // LHS strictly increasing in k, so binary search for the largest feasible k.
  long long lo = 1, hi = 2;
  while (hi <= n / 2 && lhs(static_cast<double>(hi)) <= 1.0) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (lhs(static_cast<double>(mid)) <= 1.0 ? lo : hi) = mid;
  }
  return static_cast<int>(lo);
}

ContaminatedPlan k_contaminated(int n, double eps, double alpha) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("k_contaminated: eps outside (0, 1/2)");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("k_contaminated: alpha outside (0,1)");
  }
  const int eps_n = static_cast<int>(std::floor(eps * n));
  const int log_term = static_cast<int>(std::ceil(std::log(4.0 / alpha)));
  ContaminatedPlan plan;
  plan.k = eps_n + log_term;
  const double root = std::sqrt(2.0 * eps_n + 2.0 * log_term - 1.0) +
                      std::sqrt(static_cast<double>(log_term));
  plan.d = root * root / static_cast<double>(n);
  plan.feasible = plan.d < 1.0 && 2 * plan.k < n;
  return plan;
}

ConfidencePlan precise_ci_plan(long long n, double alpha, double delta, double p,
                               double kappa, double c_universal) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("precise_ci_plan: alpha outside (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("precise_ci_plan: delta outside (0,1)");
  if (!(p > 2.0) || !(kappa >= 1.0)) {
    throw std::domain_error("precise_ci_plan: need p > 2 and kappa >= 1");
  }
  if (!(c_universal > 0.0)) throw std::domain_error("precise_ci_plan: C must be > 0");
  ConfidencePlan plan;
  plan.regime = PlanRegime::kPrecise;
  plan.x = std_normal_quantile(1.0 - 0.5 * alpha);
  const double tail = 1.0 - std_normal_cdf(plan.x);
  const int k = std::max(2, static_cast<int>(std::ceil(std::log(4.0 / (delta * tail)))));
  plan.k1 = plan.k2 = k;
  const double gamma = kappa *
                       std::pow(static_cast<double>(k), (7.0 * p - 8.0) / (4.0 * p - 4.0)) /
                       std::pow(static_cast<double>(n), (p - 2.0) / (4.0 * p - 4.0));
  plan.certificate = gamma;
  plan.feasible = gamma < 1.0 / c_universal;
  plan.failure_bound = std::min(1.0, alpha);
  return plan;
}

Interval ci_from_sample(const OrderedSample& s, const ConfidencePlan& plan) {
  if (plan.regime != PlanRegime::kPrecise) {
    throw std::domain_error("ci_from_sample: plan must come from precise_ci_plan");
  }
  if (plan.k1 + plan.k2 >= s.n()) {
    throw std::domain_error("ci_from_sample: 2k must be < n");
  }
  const TrimmedSummary summary = trimmed_summary(s, {plan.k1, plan.k2});
  Interval iv;
  iv.center = summary.mean;
  iv.half_width = plan.x * std::sqrt(summary.variance) / std::sqrt(s.n());
  return iv;
}

double h_function(double xi_star, double v) {
  if (!(xi_star >= 0.0 && xi_star < 1.0)) {
    throw std::domain_error("h_function: xi_star outside [0,1)");
  }
  if (!(v >= 0.0)) throw std::domain_error("h_function: v must be >= 0");
  return std::pow(1.0 - xi_star, -1.5) - 1.0 + kSqrt2 * v / (1.0 - xi_star);
}

double v_star(long long n, int k, double p, double kappa) {
  if (k < 1 || static_cast<long long>(k) >= n) {
    throw std::domain_error("v_star: need 1 <= k < n");
  }
  if (!(p > 2.0) || !(kappa >= 1.0)) throw std::domain_error("v_star: need p > 2, kappa >= 1");
  return 6.0 * kappa *
         std::pow(static_cast<double>(k) / static_cast<double>(n),
                  (p - 2.0) / (4.0 * p - 4.0));
}

std::string regime_name(PlanRegime regime) {
  switch (regime) {
    case PlanRegime::kAll: return "all";
    case PlanRegime::kSharper: return "sharper";
    case PlanRegime::kMultiple: return "multiple";
    case PlanRegime::kPrecise: return "precise";
    case PlanRegime::kContaminated: return "contaminated";
  }
  return "?";
}

}  // namespace robustmean
