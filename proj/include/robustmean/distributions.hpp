#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustmean/rng.hpp"

namespace robustmean {

// Extended real used for moment values: finite, +infinity (divergent
// integral) or undefined (e.g. the Cauchy mean).
class ExtReal {
 public:
  static ExtReal finite(double v) { return ExtReal(Tag::kFinite, v); }
  static ExtReal infinite() { return ExtReal(Tag::kInfinite, 0.0); }
  static ExtReal undefined() { return ExtReal(Tag::kUndefined, 0.0); }

  bool is_finite() const { return tag_ == Tag::kFinite; }
  bool is_infinite() const { return tag_ == Tag::kInfinite; }
  bool is_undefined() const { return tag_ == Tag::kUndefined; }
  double value() const {
    if (!is_finite()) throw std::domain_error("ExtReal: value() on non-finite moment");
    return value_;
  }
  std::string str() const;

 private:
  enum class Tag { kFinite, kInfinite, kUndefined };
  ExtReal(Tag t, double v) : tag_(t), value_(v) {}
  Tag tag_;
  double value_;
};

struct DistributionSpec {
  enum class Family { kUniform, kNormal, kStudentT, kPareto, kLognormal, kEmpirical };

  Family family = Family::kNormal;
  double a = 0.0, b = 1.0;                       // uniform
  double mean = 0.0, sd = 1.0;                   // normal
  double dof = 1.0, location = 0.0, scale = 1.0; // student_t
  double shape = 1.0, xm = 1.0;                  // pareto
  bool centered = false;                         // pareto: subtract the mean
  double logmean = 0.0, logsd = 1.0;             // lognormal
  std::vector<double> values;                    // empirical

  static DistributionSpec uniform(double a, double b);
  static DistributionSpec normal(double mean, double sd);
  static DistributionSpec student_t(double dof, double location = 0.0, double scale = 1.0);
  static DistributionSpec pareto(double shape, double xm, bool centered = false);
  static DistributionSpec lognormal(double logmean, double logsd);
  static DistributionSpec empirical(std::vector<double> values);

  std::string describe() const;
};

struct MomentProfile {
  ExtReal mean = ExtReal::undefined();
  ExtReal sigma = ExtReal::undefined();
  std::map<double, ExtReal> nu;        // p -> nu_p
  std::map<double, ExtReal> kappa_2p;  // p -> nu_p / sigma (p > 2)
};

struct TrimmedPopulation {
  double a = 0.0, b = 1.0;
  double mu = 0.0;      // mu^{(a,b)}
  double sigma = 0.0;   // sigma^{(a,b)}
  double delta = 0.0;   // F^{-1}(b) - F^{-1}(a)
  double xi = 0.0;      // 1 - (b - a)
  std::map<double, double> nu;  // nu_p^{(a,b)}
};

struct PopulationBoundReport {
  struct Entry {
    std::string name;
    bool applicable = false;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = true;
  };
  std::vector<Entry> entries;
  bool all_satisfied() const;
};

// Generalized inverse F^{-1}(u), u in (0,1).
double quantile(const DistributionSpec& dist, double u);

// CDF F(t).
double cdf(const DistributionSpec& dist, double t);

// Inverse-transform sample: (F^{-1}(U_1), ..., F^{-1}(U_n)) off the stream.
std::vector<double> sample(const DistributionSpec& dist, int n, UniformStream& stream);
std::vector<double> sample(const DistributionSpec& dist, int n, Seed seed);

MomentProfile moment_profile(const DistributionSpec& dist, const std::vector<double>& p_list);

// rho_{F,p}(xi): normalized p-th moment mass of the heaviest sub-population
// of probability xi of |X - mu|. A boundary atom gets fractional weight so
// the sub-population mass is exactly xi.
double rho_oracle(const DistributionSpec& dist, double p, double xi);

TrimmedPopulation trimmed_population(const DistributionSpec& dist, double a, double b,
                                     const std::vector<double>& p_list);

// Evaluates the trimmed-population bias/variance/moment inequalities with
// both sides reported numerically.
PopulationBoundReport population_bound_check(const DistributionSpec& dist, double a,
                                             double b, double p, double q);

}  // namespace robustmean
