#include "robustmean/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "robustmean/gaussian.hpp"
#include "robustmean/special.hpp"

namespace robustmean {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

template <typename F>
void parallel_for(int count, ExecPolicy policy, F&& body) {
#ifdef ROBUSTMEAN_HAVE_OPENMP
  if (policy == ExecPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
#else
  (void)policy;
#endif
  for (int i = 0; i < count; ++i) body(i);
}

double apply_estimator(const EstimatorSpec& est, std::span<const double> data) {
  switch (est.kind) {
    case EstimatorKind::kTrimmed: {
      const OrderedSample s = order(data);
      return trimmed_mean(s, {est.k1, est.k2});
    }
    case EstimatorKind::kSampleMean:
      return std::accumulate(data.begin(), data.end(), 0.0) /
             static_cast<double>(data.size());
    case EstimatorKind::kMedianOfMeans:
      return median_of_means(data, est.blocks);
    case EstimatorKind::kCatoni: {
      const double scale =
          est.catoni_scale > 0.0 ? est.catoni_scale : robust_scale_guess(order(data));
      return catoni(data, scale);
    }
  }
  throw std::logic_error("apply_estimator: unknown estimator");
}

void validate_config(const ExperimentConfig& config) {
  if (config.n < 1 || config.reps < 1) {
    throw std::domain_error("replicate: need n >= 1 and reps >= 1");
  }
  const auto& est = config.estimator;
  switch (est.kind) {
    case EstimatorKind::kTrimmed:
      if (est.k1 < 0 || est.k2 < 0 || est.k1 + est.k2 >= config.n) {
        throw std::domain_error("replicate: trim counts incompatible with n");
      }
      break;
    case EstimatorKind::kMedianOfMeans:
      if (est.blocks < 1 || est.blocks > config.n) {
        throw std::domain_error("replicate: blocks outside [1, n]");
      }
      break;
    case EstimatorKind::kCatoni:
      if (config.n < 2) throw std::domain_error("replicate: catoni needs n >= 2");
      break;
    default:
      break;
  }
}

// Uniform order statistics without materializing a distribution object.
std::vector<double> uniform_block(int n, UniformStream& stream) {
  std::vector<double> u(static_cast<std::size_t>(n));
  for (auto& v : u) v = stream.next();
  return u;
}

BoundReport empirical_report(const std::string& name, Seed seed, int exceed, int reps,
                             double bound) {
  BoundReport r;
  r.inequality = name;
  r.seed = seed;
  std::vector<double> dummy;
  TailEstimate te;
  te.exceed_count = exceed;
  te.reps = reps;
  te.p_hat = static_cast<double>(exceed) / static_cast<double>(reps);
  std::tie(te.cp_low, te.cp_high) = clopper_pearson(exceed, reps);
  r.empirical = te;
  r.bound = bound;
  r.verdict = te.cp_low > bound ? Verdict::kViolated : Verdict::kConsistent;
  return r;
}

}  // namespace

std::vector<double> replicate(const ExperimentConfig& config, ExecPolicy policy) {
  validate_config(config);
  std::vector<double> out(static_cast<std::size_t>(config.reps));
  parallel_for(config.reps, policy, [&](int r) {
    UniformStream stream(config.seed, 2ULL * static_cast<std::uint64_t>(r));
    std::vector<double> data = sample(config.dist, config.n, stream);
    if (config.contamination &&
        config.contamination->strategy != ContaminationStrategy::kNone) {
      UniformStream cstream(config.seed, 2ULL * static_cast<std::uint64_t>(r) + 1ULL);
      data = contaminate(data, *config.contamination, cstream);
    }
    out[static_cast<std::size_t>(r)] = apply_estimator(config.estimator, data);
  });
  return out;
}

std::pair<double, double> clopper_pearson(int successes, int trials, double confidence) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::domain_error("clopper_pearson: invalid counts");
  }
  const double a = 0.5 * (1.0 - confidence);
  const double lo =
      successes == 0 ? 0.0
                     : incomplete_beta_inv(successes, trials - successes + 1, a);
  const double hi =
      successes == trials
          ? 1.0
          : incomplete_beta_inv(successes + 1, trials - successes, 1.0 - a);
  return {lo, hi};
}

TailEstimate tail_probability(std::span<const double> estimates, double center,
                              double threshold) {
  if (estimates.empty()) throw std::domain_error("tail_probability: empty estimates");
  if (!(threshold >= 0.0)) throw std::domain_error("tail_probability: threshold < 0");
  TailEstimate te;
  te.reps = static_cast<int>(estimates.size());
  for (double e : estimates) {
    if (std::fabs(e - center) > threshold) ++te.exceed_count;
  }
  te.p_hat = static_cast<double>(te.exceed_count) / static_cast<double>(te.reps);
  std::tie(te.cp_low, te.cp_high) = clopper_pearson(te.exceed_count, te.reps);
  return te;
}

std::string inequality_name(InequalityCase c) {
  switch (c) {
    case InequalityCase::kBernstein: return "bernstein";
    case InequalityCase::kOrderStatUpper: return "order-stat-upper";
    case InequalityCase::kOrderStatLower: return "order-stat-lower";
    case InequalityCase::kEmpiricalVariance: return "empirical-variance";
    case InequalityCase::kXiConcentration: return "xi-concentration";
    case InequalityCase::kWidthTail: return "width-tail";
    case InequalityCase::kWidthCorollary: return "width-corollary";
    case InequalityCase::kThmAllTail: return "thm-all-tail";
    case InequalityCase::kThmMultipleTail: return "thm-multiple-tail";
    case InequalityCase::kThmContaminated: return "thm-contaminated";
    case InequalityCase::kGaussianPerturbation: return "gaussian-perturbation";
    case InequalityCase::kPopulationBounds: return "population-bounds";
  }
  return "?";
}

std::optional<InequalityCase> inequality_from_name(const std::string& name) {
  for (InequalityCase c :
       {InequalityCase::kBernstein, InequalityCase::kOrderStatUpper,
        InequalityCase::kOrderStatLower, InequalityCase::kEmpiricalVariance,
        InequalityCase::kXiConcentration, InequalityCase::kWidthTail,
        InequalityCase::kWidthCorollary, InequalityCase::kThmAllTail,
        InequalityCase::kThmMultipleTail, InequalityCase::kThmContaminated,
        InequalityCase::kGaussianPerturbation, InequalityCase::kPopulationBounds}) {
    if (inequality_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent";
    case Verdict::kViolated: return "violated_beyond_mc_error";
    case Verdict::kNotApplicable: return "not_applicable";
  }
  return "?";
}

namespace {

BoundReport verify_order_stat(bool upper_tail, const VerifyParams& vp, Seed seed,
                              ExecPolicy policy) {
  const int n = vp.n, k = vp.k;
  if (k < 1 || k > n) throw std::domain_error("verify: need 1 <= k <= n");
  double threshold, bound;
  if (upper_tail) {
    const double root = std::sqrt(static_cast<double>(k - 1)) + std::sqrt(vp.t);
    threshold = root * root / n;
    bound = std::exp(-vp.t);
  } else {
    const double root = std::sqrt(static_cast<double>(k)) - std::sqrt(vp.t);
    threshold = root > 0.0 ? root * root / n : -1.0;
    bound = std::exp(-2.0 * vp.t);
  }
  std::vector<int> exceed(static_cast<std::size_t>(vp.reps), 0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> u = uniform_block(n, stream);
    std::nth_element(u.begin(), u.begin() + (k - 1), u.end());
    const double uk = u[static_cast<std::size_t>(k - 1)];
    exceed[static_cast<std::size_t>(r)] =
        upper_tail ? (uk > threshold ? 1 : 0) : (uk < threshold ? 1 : 0);
  });
  const int total = std::accumulate(exceed.begin(), exceed.end(), 0);
  BoundReport rep = empirical_report(
      upper_tail ? "order-stat-upper" : "order-stat-lower", seed, total, vp.reps, bound);
  rep.params = {{"n", double(n)}, {"k", double(k)}, {"t", vp.t}, {"threshold", threshold}};
  return rep;
}

BoundReport verify_xi(const VerifyParams& vp, Seed seed, ExecPolicy policy) {
  const int n = vp.n, k1 = vp.k1, k2 = vp.k2;
  if (k1 < 1 || k2 < 1 || k1 + k2 >= n) {
    throw std::domain_error("verify: xi-concentration needs 1 <= k1, k2, k1+k2 < n");
  }
  const double root = std::sqrt(static_cast<double>(k1 + k2 - 1)) + std::sqrt(vp.t);
  const double threshold = root * root / n;
  const double bound = std::exp(-vp.t);
  std::vector<int> exceed(static_cast<std::size_t>(vp.reps), 0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> u = uniform_block(n, stream);
    std::sort(u.begin(), u.end());
    const double xi = 1.0 - u[static_cast<std::size_t>(n - k2)] +
                      u[static_cast<std::size_t>(k1 - 1)];
    exceed[static_cast<std::size_t>(r)] = xi > threshold ? 1 : 0;
  });
  const int total = std::accumulate(exceed.begin(), exceed.end(), 0);
  BoundReport rep = empirical_report("xi-concentration", seed, total, vp.reps, bound);
  rep.params = {{"n", double(n)}, {"k1", double(k1)}, {"k2", double(k2)}, {"t", vp.t}};
  return rep;
}

// Bounded-support center/spread for the Bernstein-style checks.
struct BoundedMoments {
  double mu, sigma, delta;  // |X - mu| <= delta almost surely
};

BoundedMoments bounded_moments(const DistributionSpec& dist) {
  const MomentProfile prof = moment_profile(dist, {2.0});
  if (!prof.mean.is_finite() || !prof.sigma.is_finite()) {
    throw std::domain_error("verify: distribution must have finite mean and variance");
  }
  const double lo = quantile(dist, 1e-13);
  const double hi = quantile(dist, 1.0 - 1e-13);
  if (!(std::isfinite(lo) && std::isfinite(hi)) || hi - lo > 1e12) {
    throw std::domain_error("verify: this check needs a bounded-support distribution");
  }
  const double mu = prof.mean.value();
  return {mu, prof.sigma.value(), std::max(hi - mu, mu - lo)};
}

BoundReport verify_bernstein(const VerifyParams& vp, Seed seed, ExecPolicy policy) {
  const BoundedMoments bm = bounded_moments(vp.dist);
  const double z = vp.x;
  const double threshold =
      z * bm.sigma / std::sqrt(vp.n) + z * z * bm.delta / (12.0 * vp.n);
  std::vector<int> exceed(static_cast<std::size_t>(vp.reps), 0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, static_cast<std::uint64_t>(r));
    const std::vector<double> data = sample(vp.dist, vp.n, stream);
    const double mean = std::accumulate(data.begin(), data.end(), 0.0) / vp.n;
    exceed[static_cast<std::size_t>(r)] = mean - bm.mu >= threshold ? 1 : 0;
  });
  const int total = std::accumulate(exceed.begin(), exceed.end(), 0);
  BoundReport rep =
      empirical_report("bernstein", seed, total, vp.reps, std::exp(-0.5 * z * z));
  rep.params = {{"n", double(vp.n)}, {"z", z}, {"threshold", threshold}};
  return rep;
}

BoundReport verify_empirical_variance(const VerifyParams& vp, Seed seed,
                                      ExecPolicy policy) {
  const BoundedMoments bm = bounded_moments(vp.dist);
  if (!(bm.sigma > 0.0)) throw std::domain_error("verify: degenerate distribution");
  const double z = vp.x;
  const double threshold = 2.0 * z * bm.delta / std::sqrt(vp.n) +
                           2.0 * z * z * bm.delta * bm.delta / (12.0 * vp.n * bm.sigma);
  std::vector<int> exceed(static_cast<std::size_t>(vp.reps), 0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, static_cast<std::uint64_t>(r));
    const std::vector<double> data = sample(vp.dist, vp.n, stream);
    const double mean = std::accumulate(data.begin(), data.end(), 0.0) / vp.n;
    double ss = 0.0;
    for (double v : data) ss += (v - mean) * (v - mean);
    const double sn = std::sqrt(ss / vp.n);
    exceed[static_cast<std::size_t>(r)] = std::fabs(sn - bm.sigma) > threshold ? 1 : 0;
  });
  const int total = std::accumulate(exceed.begin(), exceed.end(), 0);
  BoundReport rep = empirical_report("empirical-variance", seed, total, vp.reps,
                                     std::min(1.0, 4.0 * std::exp(-0.5 * z * z)));
  rep.params = {{"n", double(vp.n)}, {"z", z}, {"threshold", threshold}};
  return rep;
}

double sample_width(std::span<const double> sorted, int k1, int k2) {
  const int n = static_cast<int>(sorted.size());
  return sorted[static_cast<std::size_t>(n - k2)] - sorted[static_cast<std::size_t>(k1 - 1)];
}

BoundReport verify_width_tail(const VerifyParams& vp, Seed seed, ExecPolicy policy) {
  const int n = vp.n, k1 = vp.k1, k2 = vp.k2;
  const int kmin = std::min(k1, k2);
  if (kmin < 1 || k1 + k2 >= n) throw std::domain_error("verify: width-tail needs valid k1, k2");
  const MomentProfile prof = moment_profile(vp.dist, {vp.p});
  if (!prof.nu.at(vp.p).is_finite()) {
    BoundReport rep;
    rep.inequality = "width-tail";
    rep.seed = seed;
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "nu_p is not finite for this distribution";
    return rep;
  }
  const double nu_p = prof.nu.at(vp.p).value();
  const double threshold = vp.t * nu_p * std::pow(double(n) / kmin, 1.0 / vp.p);
  const double rho_arg =
      std::min(1.0, std::pow(2.0, vp.p) / std::pow(vp.t, vp.p) * kmin / n);
  const double rho = rho_oracle(vp.dist, vp.p, rho_arg);
  const double base = std::exp(1.0) * std::pow(2.0, vp.p) * std::pow(rho, vp.p) /
                      std::pow(vp.t, vp.p);
  const double bound = std::min(1.0, std::pow(base, kmin));
  std::vector<int> exceed(static_cast<std::size_t>(vp.reps), 0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> data = sample(vp.dist, n, stream);
    std::sort(data.begin(), data.end());
    exceed[static_cast<std::size_t>(r)] = sample_width(data, k1, k2) > threshold ? 1 : 0;
  });
  const int total = std::accumulate(exceed.begin(), exceed.end(), 0);
  BoundReport rep = empirical_report("width-tail", seed, total, vp.reps, bound);
  rep.params = {{"n", double(n)},       {"k1", double(k1)}, {"k2", double(k2)},
                {"t", vp.t},            {"p", vp.p},        {"threshold", threshold},
                {"rho", rho}};
  return rep;
}

BoundReport verify_width_corollary(const VerifyParams& vp, Seed seed, ExecPolicy policy) {
  const int n = vp.n, k = vp.k;
  if (k < 1 || 2 * k >= n) throw std::domain_error("verify: width-corollary needs 2k < n");
  const MomentProfile prof = moment_profile(vp.dist, {2.0});
  if (!prof.sigma.is_finite() || !(prof.sigma.value() > 0.0)) {
    BoundReport rep;
    rep.inequality = "width-corollary";
    rep.seed = seed;
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "sigma is not finite";
    return rep;
  }
  // Smallest v with (e/6) rho_{F,2}(k/(36 v^2 n)) <= v, by bisection.
  auto excess = [&](double v) {
    const double arg = std::min(1.0, double(k) / (36.0 * v * v * n));
    return (std::exp(1.0) / 6.0) * rho_oracle(vp.dist, 2.0, arg) - v;
  };
  double lo = 1e-6, hi = 1.0;
  while (excess(lo) < 0.0 && lo > 1e-12) lo *= 0.5;
  while (excess(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  const double v = hi;
  const double sigma = prof.sigma.value();
  const double threshold = 12.0 * v * sigma * std::sqrt(double(n) / k);
  std::vector<int> exceed(static_cast<std::size_t>(vp.reps), 0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> data = sample(vp.dist, n, stream);
    std::sort(data.begin(), data.end());
    exceed[static_cast<std::size_t>(r)] = sample_width(data, k, k) > threshold ? 1 : 0;
  });
  const int total = std::accumulate(exceed.begin(), exceed.end(), 0);
  BoundReport rep = empirical_report("width-corollary", seed, total, vp.reps,
                                     std::exp(-double(k)));
  rep.params = {{"n", double(n)}, {"k", double(k)}, {"v", v}, {"threshold", threshold}};
  return rep;
}

BoundReport verify_thm_all_tail(const VerifyParams& vp, Seed seed, ExecPolicy policy) {
  const MomentProfile prof = moment_profile(vp.dist, {2.0});
  if (!prof.sigma.is_finite()) {
    BoundReport rep;
    rep.inequality = "thm-all-tail";
    rep.seed = seed;
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "sigma is not finite";
    return rep;
  }
  const double mu = prof.mean.value();
  const double sigma = prof.sigma.value();
  const int k = k_for_tail(vp.x);
  const double threshold =
      (3.0 * kSqrt2 + 8.0 + (4.0 + 4.0 * kSqrt2) * vp.x) * sigma / std::sqrt(vp.n);
  ExperimentConfig config;
  config.dist = vp.dist;
  config.n = vp.n;
  config.reps = vp.reps;
  config.seed = seed;
  config.estimator = {EstimatorKind::kTrimmed, k, k, 1, 0.0};
  const std::vector<double> estimates = replicate(config, policy);
  const TailEstimate te = tail_probability(estimates, mu, threshold);
  BoundReport rep = empirical_report("thm-all-tail", seed, te.exceed_count, te.reps,
                                     std::min(1.0, 4.0 * std::exp(-0.5 * vp.x * vp.x)));
  rep.params = {{"n", double(vp.n)}, {"x", vp.x}, {"k", double(k)},
                {"threshold", threshold}};
  return rep;
}

BoundReport verify_thm_multiple_tail(const VerifyParams& vp, Seed seed,
                                     ExecPolicy policy) {
  BoundReport rep;
  rep.inequality = "thm-multiple-tail";
  rep.seed = seed;
  const MomentProfile prof = moment_profile(vp.dist, {2.0, vp.p});
  if (!prof.sigma.is_finite() || !prof.kappa_2p.at(vp.p).is_finite()) {
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "needs finite sigma and kappa_{2,p}";
    return rep;
  }
  const double kappa = std::max(1.0, prof.kappa_2p.at(vp.p).value());
  const auto k_star = k_multiple(vp.n, vp.p, kappa);
  if (!k_star) {
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "no feasible k at this n; increase n";
    rep.params = {{"n", double(vp.n)}, {"p", vp.p}, {"kappa", kappa}};
    return rep;
  }
  const int k = *k_star;
  if (vp.x > std::sqrt(2.0 * k)) {
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "x exceeds sqrt(2 k*)";
    return rep;
  }
  const double mu = prof.mean.value();
  const double sigma = prof.sigma.value();
  const double threshold = (1.0 + vp.x) * sigma / std::sqrt(vp.n);
  ExperimentConfig config;
  config.dist = vp.dist;
  config.n = vp.n;
  config.reps = vp.reps;
  config.seed = seed;
  config.estimator = {EstimatorKind::kTrimmed, k, k, 1, 0.0};
  const std::vector<double> estimates = replicate(config, policy);
  const TailEstimate te = tail_probability(estimates, mu, threshold);
  rep = empirical_report("thm-multiple-tail", seed, te.exceed_count, te.reps,
                         std::min(1.0, 4.0 * std::exp(-0.5 * vp.x * vp.x)));
  rep.params = {{"n", double(vp.n)}, {"x", vp.x}, {"k", double(k)}, {"kappa", kappa}};
  return rep;
}

// The theorem's C(d) is unspecified, so the checkable surrogate is verified
// instead: the contaminated trimmed mean stays inside the clean-sample
// sandwich in every replicate, and its error quantile is reported.
BoundReport verify_thm_contaminated(const VerifyParams& vp, Seed seed,
                                    ExecPolicy policy) {
  BoundReport rep;
  rep.inequality = "thm-contaminated";
  rep.seed = seed;
  const ContaminatedPlan plan = k_contaminated(vp.n, vp.eps, vp.alpha);
  if (!plan.feasible) {
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "plan infeasible (d >= 1 or 2k >= n)";
    rep.params = {{"n", double(vp.n)}, {"eps", vp.eps}, {"alpha", vp.alpha},
                  {"k", double(plan.k)}, {"d", plan.d}};
    return rep;
  }
  const MomentProfile prof = moment_profile(vp.dist, {1.0});
  if (!prof.mean.is_finite()) {
    rep.verdict = Verdict::kNotApplicable;
    rep.note = "mean undefined";
    return rep;
  }
  const double mu = prof.mean.value();
  const int k = plan.k;
  ContaminationSpec attack;
  attack.eps = vp.eps;
  attack.strategy = ContaminationStrategy::kBoundaryAdversary;
  attack.k = k;
  std::vector<int> fails(static_cast<std::size_t>(vp.reps), 0);
  std::vector<double> errors(static_cast<std::size_t>(vp.reps), 0.0);
  parallel_for(vp.reps, policy, [&](int r) {
    UniformStream stream(seed, 2ULL * static_cast<std::uint64_t>(r));
    UniformStream cstream(seed, 2ULL * static_cast<std::uint64_t>(r) + 1ULL);
    const std::vector<double> clean = sample(vp.dist, vp.n, stream);
    const std::vector<double> dirty = contaminate(clean, attack, cstream);
    const OrderedSample cs = order(clean);
    const OrderedSample ds = order(dirty);
    fails[static_cast<std::size_t>(r)] = sandwich_holds(cs, ds, vp.eps, k, k) ? 0 : 1;
    errors[static_cast<std::size_t>(r)] = std::fabs(trimmed_mean(ds, {k, k}) - mu);
  });
  const int total = std::accumulate(fails.begin(), fails.end(), 0);
  rep = empirical_report("thm-contaminated", seed, total, vp.reps, 0.0);
  rep.verdict = total > 0 ? Verdict::kViolated : Verdict::kConsistent;
  std::sort(errors.begin(), errors.end());
  const std::size_t qi = static_cast<std::size_t>(
      std::min<double>(vp.reps - 1, std::ceil((1.0 - vp.alpha) * vp.reps) - 1));
  rep.params = {{"n", double(vp.n)},  {"eps", vp.eps},      {"alpha", vp.alpha},
                {"k", double(k)},     {"d", plan.d},
                {"err_quantile", errors[qi]}};
  rep.note = "sandwich failures vs zero; err_quantile is the empirical (1-alpha)-quantile";
  return rep;
}

BoundReport verify_gaussian_perturbation(Seed seed) {
  BoundReport rep;
  rep.inequality = "gaussian-perturbation";
  rep.seed = seed;
  double worst_slack = 1e300;
  std::pair<double, double> worst{0.0, 0.0};
  bool violated = false;
  for (double x = 0.0; x <= 5.0 + 1e-9; x += 0.5) {
    const double m = std::max(x, 1.0);
    for (double h : {1.0 / (6.0 * m), -1.0 / (6.0 * m), 1.0 / (3.0 * m), -1.0 / (3.0 * m)}) {
      const auto [lo, hi] = tail_perturbation_bounds(x, h);
      const double ratio =
          (1.0 - std_normal_cdf(x + h)) / (1.0 - std_normal_cdf(x));
      for (const auto& [lhs, rhs] : {std::pair{ratio, hi}, std::pair{lo, ratio}}) {
        if (rhs - lhs < worst_slack) {
          worst_slack = rhs - lhs;
          worst = {lhs, rhs};
        }
        if (lhs > rhs + 1e-12) violated = true;
      }
    }
  }
  rep.deterministic = worst;
  rep.bound = worst.second;
  rep.verdict = violated ? Verdict::kViolated : Verdict::kConsistent;
  return rep;
}

BoundReport verify_population_bounds(const VerifyParams& vp, Seed seed) {
  BoundReport rep;
  rep.inequality = "population-bounds";
  rep.seed = seed;
  const std::vector<std::pair<double, double>> windows = {
      {0.25, 0.75}, {0.1, 0.9}, {0.05, 0.95}, {0.02, 0.9}};
  double worst_slack = 1e300;
  std::pair<double, double> worst{0.0, 0.0};
  bool violated = false;
  int applicable = 0;
  for (const auto& [a, b] : windows) {
    const PopulationBoundReport pb = population_bound_check(vp.dist, a, b, vp.p, vp.q);
    for (const auto& e : pb.entries) {
      if (!e.applicable) continue;
      ++applicable;
      if (!e.satisfied) violated = true;
      if (e.rhs - e.lhs < worst_slack) {
        worst_slack = e.rhs - e.lhs;
        worst = {e.lhs, e.rhs};
      }
    }
  }
  rep.deterministic = worst;
  rep.bound = worst.second;
  rep.params = {{"p", vp.p}, {"q", vp.q}, {"checked", double(applicable)}};
  rep.verdict = violated ? Verdict::kViolated : Verdict::kConsistent;
  return rep;
}

}  // namespace

BoundReport verify(InequalityCase c, const VerifyParams& params, Seed seed,
                   ExecPolicy policy) {
  if (params.reps < 1) throw std::domain_error("verify: reps must be >= 1");
  switch (c) {
    case InequalityCase::kBernstein: return verify_bernstein(params, seed, policy);
    case InequalityCase::kOrderStatUpper: return verify_order_stat(true, params, seed, policy);
    case InequalityCase::kOrderStatLower: return verify_order_stat(false, params, seed, policy);
    case InequalityCase::kEmpiricalVariance:
      return verify_empirical_variance(params, seed, policy);
    case InequalityCase::kXiConcentration: return verify_xi(params, seed, policy);
    case InequalityCase::kWidthTail: return verify_width_tail(params, seed, policy);
    case InequalityCase::kWidthCorollary:
      return verify_width_corollary(params, seed, policy);
    case InequalityCase::kThmAllTail: return verify_thm_all_tail(params, seed, policy);
    case InequalityCase::kThmMultipleTail:
      return verify_thm_multiple_tail(params, seed, policy);
    case InequalityCase::kThmContaminated:
      return verify_thm_contaminated(params, seed, policy);
    case InequalityCase::kGaussianPerturbation: return verify_gaussian_perturbation(seed);
    case InequalityCase::kPopulationBounds: return verify_population_bounds(params, seed);
  }
  throw std::logic_error("verify: unknown case");
}

CoverageResult coverage(const ExperimentConfig& config, const ConfidencePlan& plan,
                        double true_mean, ExecPolicy policy) {
  if (plan.k1 + plan.k2 >= config.n) {
    throw std::domain_error("coverage: plan trim counts incompatible with n");
  }
  std::vector<int> hit(static_cast<std::size_t>(config.reps), 0);
  parallel_for(config.reps, policy, [&](int r) {
    UniformStream stream(config.seed, 2ULL * static_cast<std::uint64_t>(r));
    const OrderedSample s = order(sample(config.dist, config.n, stream));
    const Interval iv = ci_from_sample(s, plan);
    hit[static_cast<std::size_t>(r)] =
        std::fabs(iv.center - true_mean) <= iv.half_width ? 1 : 0;
  });
  CoverageResult out;
  out.reps = config.reps;
  out.hits = std::accumulate(hit.begin(), hit.end(), 0);
  out.coverage = static_cast<double>(out.hits) / config.reps;
  std::tie(out.cp_low, out.cp_high) = clopper_pearson(out.hits, out.reps);
  return out;
}

std::vector<ViolinRow> violin_experiment(Seed seed, ExecPolicy policy) {
  const std::vector<double> dofs = {1.0, 1.5, 2.0, 2.5};
  constexpr int kN = 1000;
  constexpr int kReps = 100;
  constexpr int kTrim = 6;
  std::vector<ViolinRow> rows(dofs.size() * kReps * 3);
  const int jobs = static_cast<int>(dofs.size()) * kReps;
  parallel_for(jobs, policy, [&](int j) {
    const int di = j / kReps;
    const int r = j % kReps;
    UniformStream stream(seed, (static_cast<std::uint64_t>(di) << 32) |
                                   static_cast<std::uint64_t>(r));
    const std::vector<double> data =
        sample(DistributionSpec::student_t(dofs[static_cast<std::size_t>(di)]), kN, stream);
    const OrderedSample s = order(data);
    const double est_catoni = catoni(data, 1.0);
    const double est_mean =
        std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(kN);
    const double est_trim = trimmed_mean(s, {kTrim, kTrim});
    const std::size_t base = static_cast<std::size_t>(j) * 3;
    rows[base + 0] = {"catoni", dofs[static_cast<std::size_t>(di)], r, est_catoni};
    rows[base + 1] = {"sample_mean", dofs[static_cast<std::size_t>(di)], r, est_mean};
    rows[base + 2] = {"trimmed_k6", dofs[static_cast<std::size_t>(di)], r, est_trim};
  });
  return rows;
}

std::vector<std::pair<int, double>> clt_convergence_check(
    const DistributionSpec& dist, int k, const std::vector<int>& n_list, int reps,
    Seed seed, ExecPolicy policy) {
  const MomentProfile prof = moment_profile(dist, {2.0});
  if (!prof.sigma.is_finite() || !(prof.sigma.value() > 0.0)) {
    throw std::domain_error("clt_convergence_check: sigma must be finite and positive");
  }
  const double mu = prof.mean.value();
  const double sigma = prof.sigma.value();
  std::vector<std::pair<int, double>> out;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    if (2 * k >= n) throw std::domain_error("clt_convergence_check: 2k must be < n");
    std::vector<double> z(static_cast<std::size_t>(reps));
    parallel_for(reps, policy, [&](int r) {
      UniformStream stream(seed, (static_cast<std::uint64_t>(ni) << 32) |
                                     static_cast<std::uint64_t>(r));
      const OrderedSample s = order(sample(dist, n, stream));
      z[static_cast<std::size_t>(r)] =
          std::sqrt(double(n)) * (trimmed_mean(s, {k, k}) - mu) / sigma;
    });
    std::sort(z.begin(), z.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double phi = std_normal_cdf(z[i]);
      const double hi = static_cast<double>(i + 1) / reps - phi;
      const double lo = phi - static_cast<double>(i) / reps;
      ks = std::max({ks, hi, lo});
    }
    out.emplace_back(n, ks);
  }
  return out;
}

}  // namespace robustmean
