#include "robustmean/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "robustmean/contamination.hpp"
#include "robustmean/distributions.hpp"
#include "robustmean/estimators.hpp"
#include "robustmean/io.hpp"
#include "robustmean/montecarlo.hpp"
#include "robustmean/tuning.hpp"

namespace robustmean {
namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240501;

DistributionSpec parse_dist(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string family = text.substr(0, colon);
  std::vector<double> args;
  std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (family == "empirical") {
    if (tail.empty()) throw std::domain_error("--dist empirical:PATH needs a path");
    return load_empirical(tail);
  }
  std::stringstream ss(tail);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw std::domain_error("--dist: cannot parse parameter '" + piece + "'");
    }
  }
  auto arg = [&](std::size_t i, double fallback) {
    return i < args.size() ? args[i] : fallback;
  };
  if (family == "uniform") return DistributionSpec::uniform(arg(0, 0.0), arg(1, 1.0));
  if (family == "normal") return DistributionSpec::normal(arg(0, 0.0), arg(1, 1.0));
  if (family == "student_t") {
    if (args.empty()) throw std::domain_error("--dist student_t:DOF[,loc,scale]");
    return DistributionSpec::student_t(args[0], arg(1, 0.0), arg(2, 1.0));
  }
  if (family == "pareto") {
    if (args.empty()) throw std::domain_error("--dist pareto:SHAPE[,xm,centered]");
    return DistributionSpec::pareto(args[0], arg(1, 1.0), arg(2, 0.0) != 0.0);
  }
  if (family == "lognormal") return DistributionSpec::lognormal(arg(0, 0.0), arg(1, 1.0));
  throw std::domain_error("--dist: unknown family '" + family + "'");
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << body;
}

json report_to_json(const BoundReport& r) {
  json j;
  j["inequality"] = r.inequality;
  j["seed"] = r.seed.value;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  if (r.empirical) {
    j["p_hat"] = r.empirical->p_hat;
    j["cp_low"] = r.empirical->cp_low;
    j["cp_high"] = r.empirical->cp_high;
    j["exceed_count"] = r.empirical->exceed_count;
    j["reps"] = r.empirical->reps;
  }
  if (r.deterministic) {
    j["lhs"] = r.deterministic->first;
    j["rhs"] = r.deterministic->second;
  }
  j["bound"] = r.bound;
  j["verdict"] = verdict_name(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

void print_report(const BoundReport& r) {
  std::printf("# seed: %llu\n", static_cast<unsigned long long>(r.seed.value));
  std::printf("inequality: %s\n", r.inequality.c_str());
  for (const auto& [k, v] : r.params) std::printf("  %-14s %.10g\n", k.c_str(), v);
  if (r.empirical) {
    std::printf("  %-14s %d / %d\n", "exceedances", r.empirical->exceed_count,
                r.empirical->reps);
    std::printf("  %-14s %.6g  [%.6g, %.6g]\n", "p_hat", r.empirical->p_hat,
                r.empirical->cp_low, r.empirical->cp_high);
  }
  if (r.deterministic) {
    std::printf("  %-14s %.10g <= %.10g\n", "tightest", r.deterministic->first,
                r.deterministic->second);
  }
  std::printf("  %-14s %.6g\n", "bound", r.bound);
  if (!r.note.empty()) std::printf("  note: %s\n", r.note.c_str());
  std::printf("verdict: %s\n", verdict_name(r.verdict).c_str());
}

struct EstimateOptions {
  std::string file;
  std::optional<int> column;
  std::string estimator = "trimmed";
  int k = 0, k1 = -1, k2 = -1;
  int blocks = 0;
  double scale = 0.0;
};

int run_estimate(const EstimateOptions& opt, std::uint64_t seed,
                 const std::string& json_path) {
  const std::vector<double> data = ingest(opt.file, opt.column);
  double value = 0.0;
  if (opt.estimator == "trimmed") {
    const int k1 = opt.k1 >= 0 ? opt.k1 : opt.k;
    const int k2 = opt.k2 >= 0 ? opt.k2 : opt.k;
    value = trimmed_mean(order(data), {k1, k2});
  } else if (opt.estimator == "mean") {
    value = trimmed_mean(order(data), {0, 0});
  } else if (opt.estimator == "median-of-means") {
    if (opt.blocks < 1) throw std::domain_error("median-of-means needs --blocks >= 1");
    value = median_of_means(data, opt.blocks);
  } else if (opt.estimator == "catoni") {
    const double scale = opt.scale > 0.0 ? opt.scale : robust_scale_guess(order(data));
    value = catoni(data, scale);
  } else {
    throw std::domain_error("unknown estimator '" + opt.estimator + "'");
  }
  std::printf("# seed: %llu\n", static_cast<unsigned long long>(seed));
  std::printf("n: %zu\nestimate: %.10g\n", data.size(), value);
  if (!json_path.empty()) {
    json j{{"seed", seed}, {"estimator", opt.estimator}, {"n", data.size()},
           {"estimate", value}};
    write_text(json_path, j.dump(2) + "\n");
  }
  return 0;
}

EstimatorSpec make_estimator(const std::string& name, int k, int k1, int k2, int blocks,
                             double scale) {
  EstimatorSpec est;
  if (name == "trimmed") {
    est.kind = EstimatorKind::kTrimmed;
    est.k1 = k1 >= 0 ? k1 : k;
    est.k2 = k2 >= 0 ? k2 : k;
  } else if (name == "mean") {
    est.kind = EstimatorKind::kSampleMean;
  } else if (name == "median-of-means") {
    est.kind = EstimatorKind::kMedianOfMeans;
    est.blocks = blocks;
  } else if (name == "catoni") {
    est.kind = EstimatorKind::kCatoni;
    est.catoni_scale = scale;
  } else {
    throw std::domain_error("unknown estimator '" + name + "'");
  }
  return est;
}

ContaminationStrategy parse_strategy(const std::string& name) {
  if (name == "none") return ContaminationStrategy::kNone;
  if (name == "large-positive") return ContaminationStrategy::kLargePositive;
  if (name == "large-negative") return ContaminationStrategy::kLargeNegative;
  if (name == "sign-flip") return ContaminationStrategy::kSignFlip;
  if (name == "boundary") return ContaminationStrategy::kBoundaryAdversary;
  throw std::domain_error("unknown contamination strategy '" + name + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Robust mean estimation: trimmed-mean estimators, finite-sample "
               "trimming rules, and a deterministic verification harness"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  std::string json_path, csv_path, dist_text = "normal:0,1";
  bool serial = false;
  app.add_option("--seed", seed, "RNG seed (default " + std::to_string(kDefaultSeed) + ")");
  app.add_option("--json", json_path, "write a JSON report to this path");
  app.add_option("--csv", csv_path, "write a CSV report to this path");
  app.add_flag("--serial", serial, "force the serial execution path");

  // estimate
  EstimateOptions eopt;
  int column = -1;
  auto* est_cmd = app.add_subcommand("estimate", "estimate the mean of a data file");
  est_cmd->add_option("file", eopt.file, "input data file")->required();
  est_cmd->add_option("--column", column, "0-indexed comma-separated column");
  est_cmd->add_option("--estimator", eopt.estimator,
                      "trimmed | mean | median-of-means | catoni");
  est_cmd->add_option("--k", eopt.k, "symmetric trim count");
  est_cmd->add_option("--k1", eopt.k1, "lower trim count");
  est_cmd->add_option("--k2", eopt.k2, "upper trim count");
  est_cmd->add_option("--blocks", eopt.blocks, "median-of-means block count");
  est_cmd->add_option("--scale", eopt.scale, "Catoni scale (default: IQR based)");

  // ci
  std::string ci_file;
  double alpha = 0.05, delta = 0.1, p = 4.0, kappa = 1.0, c_universal = 1.0;
  auto* ci_cmd = app.add_subcommand("ci", "two-sided trimmed-mean confidence interval");
  ci_cmd->add_option("file", ci_file, "input data file")->required();
  ci_cmd->add_option("--column", column, "0-indexed comma-separated column");
  ci_cmd->add_option("--alpha", alpha, "target miss probability");
  ci_cmd->add_option("--delta", delta, "accuracy-budget parameter");
  ci_cmd->add_option("--p", p, "moment order (> 2)");
  ci_cmd->add_option("--kappa", kappa, "moment ratio bound (>= 1)");
  ci_cmd->add_option("--c-universal", c_universal, "universal constant in the feasibility check");

  // tune
  std::string regime;
  double x = 1.0, eps = 0.01, sigma = 1.0;
  long long tune_n = 1000;
  auto* tune_cmd = app.add_subcommand("tune", "compute trimming parameters for a regime");
  tune_cmd->add_option("regime", regime, "all | sharper | multiple | precise | contaminated")
      ->required();
  tune_cmd->add_option("--x", x, "tail parameter");
  tune_cmd->add_option("--n", tune_n, "sample size");
  tune_cmd->add_option("--p", p, "moment order (> 2)");
  tune_cmd->add_option("--kappa", kappa, "moment ratio bound (>= 1)");
  tune_cmd->add_option("--sigma", sigma, "standard deviation scale");
  tune_cmd->add_option("--eps", eps, "contamination fraction");
  tune_cmd->add_option("--alpha", alpha, "failure probability");
  tune_cmd->add_option("--delta", delta, "accuracy-budget parameter");
  tune_cmd->add_option("--c-universal", c_universal, "universal constant");

  // simulate
  int sim_n = 1000, reps = 100, k = 0, k1 = -1, k2 = -1, blocks = 10;
  double scale = 0.0, magnitude = 0.0;
  std::string estimator = "trimmed", attack = "none";
  auto* sim_cmd = app.add_subcommand("simulate", "replicate an estimator on synthetic data");
  sim_cmd->add_option("--dist", dist_text, "family:params, e.g. student_t:3");
  sim_cmd->add_option("--n", sim_n, "sample size per replicate");
  sim_cmd->add_option("--reps", reps, "number of replicates");
  sim_cmd->add_option("--estimator", estimator, "trimmed | mean | median-of-means | catoni");
  sim_cmd->add_option("--k", k, "symmetric trim count");
  sim_cmd->add_option("--k1", k1, "lower trim count");
  sim_cmd->add_option("--k2", k2, "upper trim count");
  sim_cmd->add_option("--blocks", blocks, "median-of-means block count");
  sim_cmd->add_option("--scale", scale, "Catoni scale (0: IQR based)");
  sim_cmd->add_option("--eps", eps, "contamination fraction");
  sim_cmd->add_option("--attack", attack,
                      "none | large-positive | large-negative | sign-flip | boundary");
  sim_cmd->add_option("--magnitude", magnitude, "outlier magnitude for large-* attacks");

  // verify
  std::string case_name;
  VerifyParams vp;
  auto* ver_cmd = app.add_subcommand("verify", "check a concentration bound by simulation");
  ver_cmd->add_option("case", case_name, "inequality id (e.g. order-stat-upper)")->required();
  ver_cmd->add_option("--dist", dist_text, "family:params");
  ver_cmd->add_option("--n", vp.n, "sample size");
  ver_cmd->add_option("--k", vp.k, "order-statistic / trim index");
  ver_cmd->add_option("--k1", vp.k1, "lower trim count");
  ver_cmd->add_option("--k2", vp.k2, "upper trim count");
  ver_cmd->add_option("--t", vp.t, "deviation parameter");
  ver_cmd->add_option("--x", vp.x, "Gaussian tail parameter");
  ver_cmd->add_option("--eps", vp.eps, "contamination fraction");
  ver_cmd->add_option("--alpha", vp.alpha, "failure probability");
  ver_cmd->add_option("--p", vp.p, "moment order");
  ver_cmd->add_option("--q", vp.q, "secondary moment order");
  ver_cmd->add_option("--reps", vp.reps, "number of replicates");

  // violin
  auto* violin_cmd =
      app.add_subcommand("violin", "paired estimator comparison on Student-t data");
  (void)violin_cmd;

  for (CLI::App* sub : {est_cmd, ci_cmd, tune_cmd, sim_cmd, ver_cmd, violin_cmd}) {
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const ExecPolicy policy = serial ? ExecPolicy::kSerial : ExecPolicy::kParallel;
  const std::optional<int> col =
      column >= 0 ? std::optional<int>(column) : std::nullopt;

  try {
    if (est_cmd->parsed()) {
      eopt.column = col;
      return run_estimate(eopt, seed, json_path);
    }

    if (ci_cmd->parsed()) {
      const std::vector<double> data = ingest(ci_file, col);
      const ConfidencePlan plan = precise_ci_plan(
          static_cast<long long>(data.size()), alpha, delta, p, kappa, c_universal);
      const Interval iv = ci_from_sample(order(data), plan);
      std::printf("# seed: %llu\n", static_cast<unsigned long long>(seed));
      std::printf("n: %zu\nk: %d\nx: %.10g\ngamma: %.10g\nfeasible: %s\n", data.size(),
                  plan.k1, plan.x, *plan.certificate, plan.feasible ? "yes" : "no");
      std::printf("interval: [%.10g, %.10g]\n", iv.center - iv.half_width,
                  iv.center + iv.half_width);
      if (!json_path.empty()) {
        json j{{"seed", seed},           {"n", data.size()},
               {"k", plan.k1},           {"x", plan.x},
               {"gamma", *plan.certificate}, {"feasible", plan.feasible},
               {"center", iv.center},    {"half_width", iv.half_width}};
        write_text(json_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (tune_cmd->parsed()) {
      std::printf("# seed: %llu\n", static_cast<unsigned long long>(seed));
      json j{{"seed", seed}, {"regime", regime}};
      if (regime == "all" || regime == "sharper") {
        const ConfidencePlan plan =
            regime == "all"
                ? plan_all_subgaussian(x, static_cast<int>(tune_n), sigma)
                : plan_sharper(x, static_cast<int>(tune_n), p, kappa, sigma);
        std::printf("k: %d\nhalf_width: %.6g\nfailure_bound: %.6g\nfeasible: %s\n",
                    plan.k1, plan.half_width, plan.failure_bound,
                    plan.feasible ? "yes" : "no");
        if (plan.certificate) std::printf("a_min: %.6g\n", *plan.certificate);
        j["k"] = plan.k1;
        j["half_width"] = plan.half_width;
        j["failure_bound"] = plan.failure_bound;
        j["feasible"] = plan.feasible;
        if (plan.certificate) j["a_min"] = *plan.certificate;
      } else if (regime == "multiple") {
        const auto km = k_multiple(tune_n, p, kappa);
        if (km) {
          std::printf("k: %d\n", *km);
          j["k"] = *km;
        } else {
          std::printf("k: none (infeasible at this n)\n");
          j["k"] = nullptr;
        }
      } else if (regime == "precise") {
        const ConfidencePlan plan = precise_ci_plan(tune_n, alpha, delta, p, kappa, c_universal);
        std::printf("k: %d\nx: %.10g\ngamma: %.10g\nfeasible: %s\n", plan.k1, plan.x,
                    *plan.certificate, plan.feasible ? "yes" : "no");
        j["k"] = plan.k1;
        j["x"] = plan.x;
        j["gamma"] = *plan.certificate;
        j["feasible"] = plan.feasible;
      } else if (regime == "contaminated") {
        const ContaminatedPlan plan = k_contaminated(static_cast<int>(tune_n), eps, alpha);
        std::printf("k: %d\nd: %.6g\nfeasible: %s\n", plan.k, plan.d,
                    plan.feasible ? "yes" : "no");
        j["k"] = plan.k;
        j["d"] = plan.d;
        j["feasible"] = plan.feasible;
      } else {
        throw std::domain_error("unknown regime '" + regime + "'");
      }
      if (!json_path.empty()) write_text(json_path, j.dump(2) + "\n");
      return 0;
    }

    if (sim_cmd->parsed()) {
      ExperimentConfig config;
      config.dist = parse_dist(dist_text);
      config.n = sim_n;
      config.reps = reps;
      config.seed = Seed{seed};
      config.estimator = make_estimator(estimator, k, k1, k2, blocks, scale);
      if (attack != "none") {
        ContaminationSpec spec;
        spec.eps = eps;
        spec.strategy = parse_strategy(attack);
        spec.magnitude = magnitude;
        spec.k = config.estimator.k1;
        config.contamination = spec;
      }
      const std::vector<double> estimates = replicate(config, policy);
      double lo = estimates[0], hi = estimates[0], sum = 0.0;
      for (double e : estimates) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        sum += e;
      }
      std::printf("# seed: %llu\n", static_cast<unsigned long long>(seed));
      std::printf("dist: %s\nn: %d\nreps: %d\nmean: %.10g\nmin: %.10g\nmax: %.10g\n",
                  config.dist.describe().c_str(), sim_n, reps, sum / reps, lo, hi);
      if (!json_path.empty()) {
        json j{{"seed", seed},      {"dist", config.dist.describe()},
               {"n", sim_n},        {"reps", reps},
               {"estimator", estimator}, {"estimates", estimates}};
        write_text(json_path, j.dump(2) + "\n");
      }
      if (!csv_path.empty()) {
        std::string body = "replicate,estimate\n";
        char buf[64];
        for (std::size_t i = 0; i < estimates.size(); ++i) {
          std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, estimates[i]);
          body += buf;
        }
        write_text(csv_path, body);
      }
      return 0;
    }

    if (ver_cmd->parsed()) {
      const auto c = inequality_from_name(case_name);
      if (!c) throw std::domain_error("unknown inequality '" + case_name + "'");
      vp.dist = parse_dist(dist_text);
      const BoundReport report = verify(*c, vp, Seed{seed}, policy);
      print_report(report);
      if (!json_path.empty()) write_text(json_path, report_to_json(report).dump(2) + "\n");
      if (!csv_path.empty()) {
        std::string body = "inequality,p_hat,cp_low,cp_high,bound,verdict\n";
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%s\n",
                      report.inequality.c_str(),
                      report.empirical ? report.empirical->p_hat : std::nan(""),
                      report.empirical ? report.empirical->cp_low : std::nan(""),
                      report.empirical ? report.empirical->cp_high : std::nan(""),
                      report.bound, verdict_name(report.verdict).c_str());
        body += buf;
        write_text(csv_path, body);
      }
      return report.verdict == Verdict::kViolated ? 3 : 0;
    }

    if (violin_cmd->parsed()) {
      const std::vector<ViolinRow> rows = violin_experiment(Seed{seed}, policy);
      std::printf("# seed: %llu\n", static_cast<unsigned long long>(seed));
      std::printf("rows: %zu (use --csv for the full table)\n", rows.size());
      if (!csv_path.empty()) {
        std::string body = "estimator,dof,replicate,estimate\n";
        char buf[128];
        for (const auto& r : rows) {
          std::snprintf(buf, sizeof buf, "%s,%g,%d,%.17g\n", r.estimator.c_str(), r.dof,
                        r.replicate, r.estimate);
          body += buf;
        }
        write_text(csv_path, body);
      }
      if (!json_path.empty()) {
        json arr = json::array();
        for (const auto& r : rows) {
          arr.push_back({{"estimator", r.estimator},
                         {"dof", r.dof},
                         {"replicate", r.replicate},
                         {"estimate", r.estimate}});
        }
        write_text(json_path, json{{"seed", seed}, {"rows", arr}}.dump(2) + "\n");
      }
      return 0;
    }
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 2;
  }
  return 1;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace robustmean
