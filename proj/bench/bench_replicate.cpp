// Times the replication engine's parallel kernel against the serial
// reference and checks that both produce identical output.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "robustmean/montecarlo.hpp"

using namespace robustmean;

namespace {

double run_case(const ExperimentConfig& config, ExecPolicy policy,
                std::vector<double>& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = replicate(config, policy);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %8s %s\n", "case", "serial[s]", "parallel[s]",
              "speedup", "identical");
  struct Case {
    const char* name;
    DistributionSpec dist;
    int n;
    int reps;
    EstimatorSpec est;
  };
  const Case cases[] = {
      {"normal trimmed k=6", DistributionSpec::normal(0.0, 1.0), 10000, 2000,
       {EstimatorKind::kTrimmed, 6, 6, 1, 0.0}},
      {"student_t(3) trimmed k=6", DistributionSpec::student_t(3.0), 10000, 2000,
       {EstimatorKind::kTrimmed, 6, 6, 1, 0.0}},
      {"lognormal catoni", DistributionSpec::lognormal(0.0, 1.0), 2000, 2000,
       {EstimatorKind::kCatoni, 0, 0, 1, 0.0}},
      {"normal median-of-means", DistributionSpec::normal(0.0, 1.0), 10000, 5000,
       {EstimatorKind::kMedianOfMeans, 0, 0, 50, 0.0}},
  };
  bool all_identical = true;
  for (const Case& c : cases) {
    ExperimentConfig config;
    config.dist = c.dist;
    config.n = c.n;
    config.reps = c.reps;
    config.seed = Seed{42};
    config.estimator = c.est;
    std::vector<double> serial_out, parallel_out;
    const double ts = run_case(config, ExecPolicy::kSerial, serial_out);
    const double tp = run_case(config, ExecPolicy::kParallel, parallel_out);
    const bool same = serial_out == parallel_out;
    all_identical = all_identical && same;
    std::printf("%-28s %10.3f %10.3f %7.2fx %s\n", c.name, ts, tp, ts / tp,
                same ? "yes" : "NO");
  }
  return all_identical ? 0 : 1;
}
