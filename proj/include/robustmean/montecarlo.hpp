#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "robustmean/contamination.hpp"
#include "robustmean/distributions.hpp"
#include "robustmean/estimators.hpp"
#include "robustmean/rng.hpp"
#include "robustmean/tuning.hpp"

namespace robustmean {

// Parallel kernels have a serial reference path; both must produce
// byte-identical results (per-replicate substreams, no shared state).
enum class ExecPolicy { kParallel, kSerial };

enum class EstimatorKind { kTrimmed, kSampleMean, kMedianOfMeans, kCatoni };

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kTrimmed;
  int k1 = 0, k2 = 0;        // trimmed
  int blocks = 1;            // median of means
  double catoni_scale = 0.0; // 0 selects the IQR-based default
};

struct ExperimentConfig {
  DistributionSpec dist;
  int n = 1;
  int reps = 1;
  Seed seed;
  EstimatorSpec estimator;
  std::optional<ContaminationSpec> contamination;
};

// One estimate per replicate; replicate r draws from substream (seed, 2r)
// (contamination uses (seed, 2r+1)) so the output is independent of worker
// count and scheduling.
std::vector<double> replicate(const ExperimentConfig& config,
                              ExecPolicy policy = ExecPolicy::kParallel);

struct TailEstimate {
  int exceed_count = 0;
  int reps = 0;
  double p_hat = 0.0;
  double cp_low = 0.0;   // exact binomial 95% two-sided bounds
  double cp_high = 1.0;
};

TailEstimate tail_probability(std::span<const double> estimates, double center,
                              double threshold);

// Exact binomial (Clopper-Pearson) two-sided bounds at the given confidence.
std::pair<double, double> clopper_pearson(int successes, int trials,
                                          double confidence = 0.95);

enum class Verdict { kConsistent, kViolated, kNotApplicable };

struct BoundReport {
  std::string inequality;
  std::map<std::string, double> params;
  std::optional<TailEstimate> empirical;
  // Deterministic cases: the (lhs, rhs) pair with the smallest slack.
  std::optional<std::pair<double, double>> deterministic;
  double bound = 1.0;
  Verdict verdict = Verdict::kNotApplicable;
  Seed seed;
  std::string note;
};

enum class InequalityCase {
  kBernstein,
  kOrderStatUpper,
  kOrderStatLower,
  kEmpiricalVariance,
  kXiConcentration,
  kWidthTail,
  kWidthCorollary,
  kThmAllTail,
  kThmMultipleTail,
  kThmContaminated,
  kGaussianPerturbation,
  kPopulationBounds,
};

std::string inequality_name(InequalityCase c);
std::optional<InequalityCase> inequality_from_name(const std::string& name);

struct VerifyParams {
  DistributionSpec dist = DistributionSpec::normal(0.0, 1.0);
  int n = 100;
  int k = 1;
  int k1 = 1, k2 = 1;
  double t = 1.0;   // deviation parameter of the order-statistic / width bounds
  double x = 1.0;   // Gaussian tail parameter
  double eps = 0.01;
  double alpha = 0.05;
  double p = 4.0, q = 2.0;
  int reps = 10000;
};

// Simulates (or evaluates) the named inequality and compares the empirical
// Clopper-Pearson lower bound (or the deterministic LHS) with the
// theoretical bound.
BoundReport verify(InequalityCase c, const VerifyParams& params, Seed seed,
                   ExecPolicy policy = ExecPolicy::kParallel);

struct CoverageResult {
  int hits = 0;
  int reps = 0;
  double coverage = 0.0;
  double cp_low = 0.0, cp_high = 1.0;
};

CoverageResult coverage(const ExperimentConfig& config, const ConfidencePlan& plan,
                        double true_mean, ExecPolicy policy = ExecPolicy::kParallel);

struct ViolinRow {
  std::string estimator;
  double dof = 0.0;
  int replicate = 0;
  double estimate = 0.0;
};

// Paired comparison of Catoni, sample mean and the k=6 trimmed mean on
// Student-t data: dof in {1, 1.5, 2, 2.5}, n = 1000, 100 replicates.
std::vector<ViolinRow> violin_experiment(Seed seed,
                                         ExecPolicy policy = ExecPolicy::kParallel);

// Kolmogorov-Smirnov distance of sqrt(n)(mean_{n,k} - mu)/sigma from the
// standard normal, per n.
std::vector<std::pair<int, double>> clt_convergence_check(
    const DistributionSpec& dist, int k, const std::vector<int>& n_list, int reps,
    Seed seed, ExecPolicy policy = ExecPolicy::kParallel);

std::string verdict_name(Verdict v);

}  // namespace robustmean
