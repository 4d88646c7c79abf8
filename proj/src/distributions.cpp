#include "robustmean/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "robustmean/gaussian.hpp"
#include "robustmean/quadrature.hpp"
#include "robustmean/special.hpp"

namespace robustmean {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

// ---- Student-t helpers (standard location 0, scale 1) ----

double t_cdf(double dof, double t) {
  if (t == 0.0) return 0.5;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * incomplete_beta(0.5 * dof, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double t_pdf(double dof, double t) {
  const double ln = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                    0.5 * std::log(dof) - std::log(kSqrtPi) -
                    0.5 * (dof + 1.0) * std::log1p(t * t / dof);
  return std::exp(ln);
}

// F^{-1}(1 - v) for an upper-tail probability v in (0, 1/2). Working on the
// tail directly keeps full relative precision where 1 - v would round to 1.
double t_quantile_from_tail(double dof, double v) {
  if (dof == 1.0) return 1.0 / std::tan(M_PI * v);  // Cauchy
  if (dof == 2.0) return (1.0 - 2.0 * v) / std::sqrt(2.0 * v * (1.0 - v));

  auto upper_tail = [&](double t) {
    return 0.5 * incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
  };
  const double target = std::log(v);
  double lo = 1e-300, hi = 1.0;
  while (upper_tail(hi) > v) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return hi;
  }
  // Newton in (log t, log tail) coordinates, safeguarded by bisection; the
  // far tail is a power law, which this parameterization makes nearly linear.
  double llo = std::log(lo), lhi = std::log(hi);
  const double guess = std::max(-std_normal_quantile(v), 1e-300);
  double l = std::min(std::max(std::log(guess), llo), lhi);
  for (int i = 0; i < 300; ++i) {
    const double t = std::exp(l);
    const double s = upper_tail(t);
    if (s <= 0.0) {
      lhi = l;
      l = 0.5 * (llo + lhi);
      continue;
    }
    const double err = std::log(s) - target;  // decreasing in l
    if (std::fabs(err) <= 4e-15) break;
    (err > 0.0 ? llo : lhi) = l;
    const double d = t_pdf(dof, t);
    double next = d > 0.0 ? l + err * s / (t * d) : 0.5 * (llo + lhi);
    if (!(next > llo && next < lhi)) next = 0.5 * (llo + lhi);
    if (next == l || lhi - llo <= 4e-16 * std::max(1.0, std::fabs(lhi))) break;
    l = next;
  }
  return std::exp(l);
}

double t_quantile(double dof, double u) {
  if (u == 0.5) return 0.0;
  return u < 0.5 ? -t_quantile_from_tail(dof, u) : t_quantile_from_tail(dof, 1.0 - u);
}

// Centered absolute p-th moment of a standard t with dof > 1, p < dof.
double t_abs_moment_p(double dof, double p) {
  const double ln = 0.5 * p * std::log(dof) + std::lgamma(0.5 * (p + 1.0)) +
                    std::lgamma(0.5 * (dof - p)) - std::log(kSqrtPi) -
                    std::lgamma(0.5 * dof);
  return std::exp(ln);  // E|T|^p
}

double normal_abs_moment_p(double p) {
  // E|Z|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
  return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) -
                  std::log(kSqrtPi));
}

double pareto_mean_raw(const DistributionSpec& d) {
  return d.shape * d.xm / (d.shape - 1.0);
}

// Shell quadrature for integrands singular at u = 0: integral over (0, hi].
double integrate_left_shells(const std::function<double(double)>& f, double hi,
                             double rel_tol = 1e-10) {
  if (hi <= 0.0) return 0.0;
  double total = 0.0;
  double e = hi;
  for (int j = 0; j < 1200; ++j) {
    const double piece = integrate(f, 0.5 * e, e, rel_tol);
    total += piece;
    e *= 0.5;
    if (std::fabs(piece) <= rel_tol * std::max(std::fabs(total), 1e-300) || e < 1e-305) break;
  }
  return total;
}

// Integral over [lo, 1) with a possible singularity at u = 1.
double integrate_right_shells(const std::function<double(double)>& f, double lo,
                              double rel_tol = 1e-10) {
  if (lo >= 1.0) return 0.0;
  auto g = [&f](double v) { return f(1.0 - v); };
  return integrate_left_shells(g, 1.0 - lo, rel_tol);
}

ExtReal dist_mean(const DistributionSpec& d) {
  using F = DistributionSpec::Family;
  switch (d.family) {
    case F::kUniform:
      return ExtReal::finite(0.5 * (d.a + d.b));
    case F::kNormal:
      return ExtReal::finite(d.mean);
    case F::kStudentT:
      return d.dof > 1.0 ? ExtReal::finite(d.location) : ExtReal::undefined();
    case F::kPareto:
      if (d.shape <= 1.0) return ExtReal::infinite();
      return ExtReal::finite(d.centered ? 0.0 : pareto_mean_raw(d));
    case F::kLognormal:
      return ExtReal::finite(std::exp(d.logmean + 0.5 * d.logsd * d.logsd));
    case F::kEmpirical:
      return ExtReal::finite(std::accumulate(d.values.begin(), d.values.end(), 0.0) /
                             static_cast<double>(d.values.size()));
  }
  return ExtReal::undefined();
}

// F^{-1}(1 - v) in tail parameterization, stable for v far below 1e-16
// (where 1 - v would round to 1).
double upper_quantile(const DistributionSpec& d, double v) {
  using F = DistributionSpec::Family;
  switch (d.family) {
    case F::kUniform:
      return d.b - (d.b - d.a) * v;
    case F::kNormal:
      return d.mean - d.sd * std_normal_quantile(v);
    case F::kStudentT:
      return d.location + d.scale * t_quantile_from_tail(d.dof, v);
    case F::kPareto: {
      const double x = d.xm * std::pow(v, -1.0 / d.shape);
      return d.centered ? x - pareto_mean_raw(d) : x;
    }
    case F::kLognormal:
      return std::exp(d.logmean - d.logsd * std_normal_quantile(v));
    case F::kEmpirical: {
      const std::size_t m = d.values.size();
      const std::size_t drop = static_cast<std::size_t>(std::floor(v * static_cast<double>(m)));
      return d.values[m - 1 - std::min(drop, m - 1)];
    }
  }
  throw std::logic_error("upper_quantile: unknown family");
}

// nu_p^p by quadrature over u in (0,1); only valid when the integral is
// known finite for this family/p combination. The upper tail is integrated
// in tail coordinates.
double nu_p_pow_quadrature(const DistributionSpec& d, double mu, double p) {
  auto fl = [&](double u) { return std::pow(std::fabs(quantile(d, u) - mu), p); };
  auto fr = [&](double v) { return std::pow(std::fabs(upper_quantile(d, v) - mu), p); };
  return integrate(fl, 0.25, 0.75, 1e-8) + integrate_left_shells(fl, 0.25, 1e-8) +
         integrate_left_shells(fr, 0.25, 1e-8);
}

ExtReal dist_nu_p(const DistributionSpec& d, const ExtReal& mean, double p) {
  using F = DistributionSpec::Family;
  if (!mean.is_finite()) return mean.is_infinite() ? ExtReal::infinite() : ExtReal::undefined();
  const double mu = mean.value();
  switch (d.family) {
    case F::kUniform: {
      const double h = 0.5 * (d.b - d.a);
      return ExtReal::finite(h * std::pow(p + 1.0, -1.0 / p));
    }
    case F::kNormal:
      return ExtReal::finite(d.sd * std::pow(normal_abs_moment_p(p), 1.0 / p));
    case F::kStudentT:
      if (p >= d.dof) return ExtReal::infinite();
      return ExtReal::finite(d.scale * std::pow(t_abs_moment_p(d.dof, p), 1.0 / p));
    case F::kPareto:
      if (p >= d.shape) return ExtReal::infinite();
      return ExtReal::finite(std::pow(nu_p_pow_quadrature(d, mu, p), 1.0 / p));
    case F::kLognormal:
      return ExtReal::finite(std::pow(nu_p_pow_quadrature(d, mu, p), 1.0 / p));
    case F::kEmpirical: {
      double s = 0.0;
      for (double v : d.values) s += std::pow(std::fabs(v - mu), p);
      return ExtReal::finite(std::pow(s / static_cast<double>(d.values.size()), 1.0 / p));
    }
  }
  return ExtReal::undefined();
}

}  // namespace

std::string ExtReal::str() const {
  if (is_finite()) return std::to_string(value_);
  return is_infinite() ? "inf" : "undefined";
}

DistributionSpec DistributionSpec::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform: need finite a < b");
  DistributionSpec d;
  d.family = Family::kUniform;
  d.a = a;
  d.b = b;
  return d;
}

DistributionSpec DistributionSpec::normal(double mean, double sd) {
  require(std::isfinite(mean) && sd > 0.0, "normal: need finite mean and sd > 0");
  DistributionSpec d;
  d.family = Family::kNormal;
  d.mean = mean;
  d.sd = sd;
  return d;
}

DistributionSpec DistributionSpec::student_t(double dof, double location, double scale) {
  require(dof > 0.0 && std::isfinite(location) && scale > 0.0,
          "student_t: need dof > 0, finite location, scale > 0");
  DistributionSpec d;
  d.family = Family::kStudentT;
  d.dof = dof;
  d.location = location;
  d.scale = scale;
  return d;
}

DistributionSpec DistributionSpec::pareto(double shape, double xm, bool centered) {
  require(shape > 0.0 && xm > 0.0, "pareto: need shape > 0 and scale > 0");
  require(!centered || shape > 1.0, "pareto: centering requires a finite mean (shape > 1)");
  DistributionSpec d;
  d.family = Family::kPareto;
  d.shape = shape;
  d.xm = xm;
  d.centered = centered;
  return d;
}

DistributionSpec DistributionSpec::lognormal(double logmean, double logsd) {
  require(std::isfinite(logmean) && logsd > 0.0, "lognormal: need finite logmean, logsd > 0");
  DistributionSpec d;
  d.family = Family::kLognormal;
  d.logmean = logmean;
  d.logsd = logsd;
  return d;
}

DistributionSpec DistributionSpec::empirical(std::vector<double> values) {
  require(!values.empty(), "empirical: sequence must be nonempty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i]),
            "empirical: non-finite value at index " + std::to_string(i));
  }
  std::sort(values.begin(), values.end());
  DistributionSpec d;
  d.family = Family::kEmpirical;
  d.values = std::move(values);
  return d;
}

std::string DistributionSpec::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::kUniform: os << "uniform(" << a << "," << b << ")"; break;
    case Family::kNormal: os << "normal(" << mean << "," << sd << ")"; break;
    case Family::kStudentT:
      os << "student_t(" << dof;
      if (location != 0.0 || scale != 1.0) os << "," << location << "," << scale;
      os << ")";
      break;
    case Family::kPareto:
      os << "pareto(" << shape << "," << xm << (centered ? ",centered" : "") << ")";
      break;
    case Family::kLognormal: os << "lognormal(" << logmean << "," << logsd << ")"; break;
    case Family::kEmpirical: os << "empirical(n=" << values.size() << ")"; break;
  }
  return os.str();
}

double quantile(const DistributionSpec& dist, double u) {
  require(u > 0.0 && u < 1.0, "quantile: u must lie strictly in (0,1)");
  using F = DistributionSpec::Family;
  switch (dist.family) {
    case F::kUniform:
      return dist.a + (dist.b - dist.a) * u;
    case F::kNormal:
      return dist.mean + dist.sd * std_normal_quantile(u);
    case F::kStudentT:
      return dist.location + dist.scale * t_quantile(dist.dof, u);
    case F::kPareto: {
      const double x = dist.xm * std::pow(1.0 - u, -1.0 / dist.shape);
      return dist.centered ? x - pareto_mean_raw(dist) : x;
    }
    case F::kLognormal:
      return std::exp(dist.logmean + dist.logsd * std_normal_quantile(u));
    case F::kEmpirical: {
      const std::size_t m = dist.values.size();
      const double r = std::ceil(u * static_cast<double>(m));
      const std::size_t i = std::min<std::size_t>(m, std::max(1.0, r));
      return dist.values[i - 1];
    }
  }
  throw std::logic_error("quantile: unknown family");
}

double cdf(const DistributionSpec& dist, double t) {
  using F = DistributionSpec::Family;
  switch (dist.family) {
    case F::kUniform:
      return std::clamp((t - dist.a) / (dist.b - dist.a), 0.0, 1.0);
    case F::kNormal:
      return std_normal_cdf((t - dist.mean) / dist.sd);
    case F::kStudentT:
      return t_cdf(dist.dof, (t - dist.location) / dist.scale);
    case F::kPareto: {
      const double x = dist.centered ? t + pareto_mean_raw(dist) : t;
      if (x <= dist.xm) return 0.0;
      return 1.0 - std::pow(dist.xm / x, dist.shape);
    }
    case F::kLognormal:
      if (t <= 0.0) return 0.0;
      return std_normal_cdf((std::log(t) - dist.logmean) / dist.logsd);
    case F::kEmpirical: {
      const auto it = std::upper_bound(dist.values.begin(), dist.values.end(), t);
      return static_cast<double>(it - dist.values.begin()) /
             static_cast<double>(dist.values.size());
    }
  }
  throw std::logic_error("cdf: unknown family");
}

std::vector<double> sample(const DistributionSpec& dist, int n, UniformStream& stream) {
  require(n >= 1, "sample: n must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(quantile(dist, stream.next()));
  return out;
}

std::vector<double> sample(const DistributionSpec& dist, int n, Seed seed) {
  UniformStream stream(seed, 0);
  return sample(dist, n, stream);
}

MomentProfile moment_profile(const DistributionSpec& dist, const std::vector<double>& p_list) {
  require(!p_list.empty(), "moment_profile: p_list must be nonempty");
  MomentProfile prof;
  prof.mean = dist_mean(dist);
  prof.sigma = dist_nu_p(dist, prof.mean, 2.0);
  for (double p : p_list) {
    require(p >= 1.0, "moment_profile: p must be >= 1");
    const ExtReal nu = dist_nu_p(dist, prof.mean, p);
    prof.nu.emplace(p, nu);
    if (p > 2.0) {
      if (nu.is_finite() && prof.sigma.is_finite() && prof.sigma.value() > 0.0) {
        prof.kappa_2p.emplace(p, ExtReal::finite(nu.value() / prof.sigma.value()));
      } else if (nu.is_infinite()) {
        prof.kappa_2p.emplace(p, ExtReal::infinite());
      } else {
        prof.kappa_2p.emplace(p, ExtReal::undefined());
      }
    }
  }
  return prof;
}

namespace {

// Exact discrete rho for empirical laws: greedy mass on the largest
// |v - mu|, fractional weight on the boundary atom.
double rho_empirical(const DistributionSpec& d, double p, double xi) {
  const double m = static_cast<double>(d.values.size());
  const double mu = dist_mean(d).value();
  std::vector<double> g(d.values.size());
  std::transform(d.values.begin(), d.values.end(), g.begin(),
                 [mu](double v) { return std::fabs(v - mu); });
  std::sort(g.begin(), g.end(), std::greater<>());
  double nup = 0.0;
  for (double gi : g) nup += std::pow(gi, p) / m;
  if (nup == 0.0) return 0.0;
  double remaining = xi, acc = 0.0;
  for (double gi : g) {
    const double w = std::min(1.0 / m, remaining);
    acc += w * std::pow(gi, p);
    remaining -= w;
    if (remaining <= 0.0) break;
  }
  return std::min(1.0, std::pow(acc / nup, 1.0 / p));
}

}  // namespace

double rho_oracle(const DistributionSpec& dist, double p, double xi) {
  require(p >= 1.0, "rho_oracle: p must be >= 1");
  require(xi >= 0.0 && xi <= 1.0, "rho_oracle: xi outside [0,1]");
  if (xi == 0.0) return 0.0;
  if (dist.family == DistributionSpec::Family::kEmpirical) {
    return rho_empirical(dist, p, xi);
  }
  const MomentProfile prof = moment_profile(dist, {p});
  const ExtReal nu = prof.nu.at(p);
  if (!nu.is_finite()) throw std::domain_error("rho_oracle: nu_p is not finite");
  if (nu.value() == 0.0) return 0.0;
  if (xi >= 1.0) return 1.0;
  const double mu = prof.mean.value();
  const double nup = std::pow(nu.value(), p);

  auto g = [&](double u) { return std::fabs(quantile(dist, u) - mu); };
  // The quantile is nondecreasing, so g decreases on (0, u0] and increases
  // on [u0, 1) where F^{-1}(u0) = mu.
  double lo = 1e-15, hi = 1.0 - 1e-15;
  if (quantile(dist, lo) >= mu) {
    lo = 0.0;  // mu at or below the lower endpoint: left branch empty
  } else if (quantile(dist, hi) <= mu) {
    lo = hi = 1.0;
  } else {
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
      const double mid = 0.5 * (lo + hi);
      (quantile(dist, mid) < mu ? lo : hi) = mid;
    }
  }
  const double u0 = 0.5 * (lo + hi);

  // Probability mass of {g > c}: one interval near each endpoint.
  auto crossing_left = [&](double c) {  // sup{u <= u0 : g(u) >= c}
    if (u0 <= 1e-15 || g(1e-15) < c) return 0.0;
    double a = 1e-15, b = u0;
    for (int i = 0; i < 200 && b - a > 1e-16; ++i) {
      const double mid = 0.5 * (a + b);
      (g(mid) >= c ? a : b) = mid;
    }
    return 0.5 * (a + b);
  };
  auto crossing_right = [&](double c) {  // inf{u >= u0 : g(u) >= c}
    if (u0 >= 1.0 - 1e-15 || g(1.0 - 1e-15) < c) return 1.0;
    double a = u0, b = 1.0 - 1e-15;
    for (int i = 0; i < 200 && b - a > 1e-16; ++i) {
      const double mid = 0.5 * (a + b);
      (g(mid) >= c ? b : a) = mid;
    }
    return 0.5 * (a + b);
  };
  auto tail_mass = [&](double c) {
    return crossing_left(c) + (1.0 - crossing_right(c));
  };

  // Find the threshold c with P(g > c) = xi by bisection.
  double chi = std::max(nu.value(), 1e-8);
  while (tail_mass(chi) >= xi && chi < 1e300) chi *= 2.0;
  double clo = 0.0;
  for (int i = 0; i < 120; ++i) {
    const double mid = 0.5 * (clo + chi);
    (tail_mass(mid) >= xi ? clo : chi) = mid;
  }
  const double c = 0.5 * (clo + chi);
  const double u1 = crossing_left(c);
  const double u2 = crossing_right(c);
  const double mass = u1 + (1.0 - u2);

  auto gp = [&](double u) { return std::pow(g(u), p); };
  auto gp_right = [&](double v) {
    return std::pow(std::fabs(upper_quantile(dist, v) - mu), p);
  };
  double acc =
      integrate_left_shells(gp, u1, 1e-9) + integrate_left_shells(gp_right, 1.0 - u2, 1e-9);
  acc += std::pow(c, p) * std::max(0.0, xi - mass);  // boundary atom weight
  return std::clamp(std::pow(acc / nup, 1.0 / p), 0.0, 1.0);
}

TrimmedPopulation trimmed_population(const DistributionSpec& dist, double a, double b,
                                     const std::vector<double>& p_list) {
  require(a > 0.0 && b < 1.0 && a < b, "trimmed_population: need 0 < a < b < 1");
  TrimmedPopulation tp;
  tp.a = a;
  tp.b = b;
  tp.xi = 1.0 - (b - a);
  tp.delta = quantile(dist, b) - quantile(dist, a);
  const double w = b - a;
  auto q = [&](double u) { return quantile(dist, u); };
  tp.mu = integrate(q, a, b, 1e-10) / w;
  tp.sigma = std::sqrt(std::max(
      0.0, integrate([&](double u) { const double d = q(u) - tp.mu; return d * d; }, a, b,
                     1e-10) /
               w));
  for (double p : p_list) {
    require(p >= 1.0, "trimmed_population: p must be >= 1");
    const double mp =
        integrate([&](double u) { return std::pow(std::fabs(q(u) - tp.mu), p); }, a, b,
                  1e-10) /
        w;
    tp.nu.emplace(p, std::pow(mp, 1.0 / p));
  }
  return tp;
}

bool PopulationBoundReport::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Entry& e) { return !e.applicable || e.satisfied; });
}

PopulationBoundReport population_bound_check(const DistributionSpec& dist, double a,
                                             double b, double p, double q) {
  require(a > 0.0 && b < 1.0 && a < b, "population_bound_check: need 0 < a < b < 1");
  require(p > 1.0, "population_bound_check: p must be > 1");
  constexpr double kTol = 1e-9;
  PopulationBoundReport report;
  const double xi = 1.0 - (b - a);
  const MomentProfile prof = moment_profile(dist, {2.0, p, q});
  const TrimmedPopulation tp = trimmed_population(dist, a, b, {p});

  auto add = [&report](const std::string& name, bool applicable, double lhs, double rhs) {
    report.entries.push_back({name, applicable, lhs, rhs, lhs <= rhs + kTol});
  };

  // Bias bound: |mu - mu^{(a,b)}| <= nu_p rho_{F,p}(xi) xi^{(p-1)/p} / (1-xi)
  if (prof.mean.is_finite() && prof.nu.at(p).is_finite()) {
    const double nup = prof.nu.at(p).value();
    const double rhs =
        nup * rho_oracle(dist, p, xi) * std::pow(xi, (p - 1.0) / p) / (1.0 - xi);
    add("bias", true, std::fabs(prof.mean.value() - tp.mu), rhs);
  } else {
    add("bias", false, 0.0, 0.0);
  }

  const bool sigma_ok = prof.sigma.is_finite();
  // Variance upper bound: sigma^{(a,b)} <= sigma / (1-xi)
  add("variance_upper", sigma_ok, tp.sigma, sigma_ok ? prof.sigma.value() / (1.0 - xi) : 0.0);

  // Width-moment bound: sigma^{(a,b)} <= sqrt(2) nu_q^{q/2} Delta^{1-q/2} / (1-xi),
  // for 1 < q <= 2.
  if (q > 1.0 && q <= 2.0 && prof.nu.at(q).is_finite() && tp.delta > 0.0) {
    const double rhs = std::sqrt(2.0) * std::pow(prof.nu.at(q).value(), 0.5 * q) *
                       std::pow(tp.delta, 1.0 - 0.5 * q) / (1.0 - xi);
    add("variance_width", true, tp.sigma, rhs);
  } else {
    add("variance_width", false, 0.0, 0.0);
  }

  // Variance lower bound, valid when xi < 1/2 and rho_{F,2}(xi) < 1/3.
  if (sigma_ok && xi < 0.5) {
    const double rho2 = rho_oracle(dist, 2.0, xi);
    if (rho2 < 1.0 / 3.0) {
      const double factor =
          std::sqrt((1.0 - xi) / (1.0 - ((2.0 - xi) / (1.0 - xi)) * rho2 * rho2));
      add("variance_lower", true, prof.sigma.value(), factor * tp.sigma);
    } else {
      add("variance_lower", false, 0.0, 0.0);
    }
  } else {
    add("variance_lower", false, 0.0, 0.0);
  }

  // Trimmed moment bound: nu_p^{(a,b)} <= (1/(1-xi)^{1/p} + xi^{(p-1)/p}/(1-xi)) nu_p
  if (prof.nu.at(p).is_finite()) {
    const double rhs = (std::pow(1.0 - xi, -1.0 / p) +
                        std::pow(xi, (p - 1.0) / p) / (1.0 - xi)) *
                       prof.nu.at(p).value();
    add("trimmed_moment", true, tp.nu.at(p), rhs);
  } else {
    add("trimmed_moment", false, 0.0, 0.0);
  }

  return report;
}

}  // namespace robustmean
