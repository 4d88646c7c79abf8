#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "robustmean/cli.hpp"
#include "robustmean/io.hpp"

using namespace robustmean;
namespace fs = std::filesystem;

namespace {

// Sends the CLI's stdout to /dev/null for the lifetime of the object so the
// test log stays readable; file outputs (--json/--csv) are unaffected.
class StdoutSilencer {
 public:
  StdoutSilencer() {
    std::fflush(stdout);
    saved_ = dup(1);
    const int devnull = open_devnull();
    dup2(devnull, 1);
    close(devnull);
  }
  ~StdoutSilencer() {
    std::fflush(stdout);
    dup2(saved_, 1);
    close(saved_);
  }

 private:
  static int open_devnull() {
    FILE* f = std::fopen("/dev/null", "w");
    return fileno(f);  // leaked FILE*, once per silencer; fine for tests
  }
  int saved_ = -1;
};

int cli(const std::vector<std::string>& args) {
  StdoutSilencer quiet;
  return run_cli(args);
}

fs::path temp_file(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p, std::ios::binary);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ingest: plain values, comments and blank lines") {
  const fs::path p = temp_file("ingest_plain.txt", "1\n2\n# note\n\n3\n");
  CHECK(ingest(p.string()) == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("ingest: comma column selection") {
  const fs::path p = temp_file("ingest_cols.csv", "a,1.5\nb,2.5\n");
  CHECK(ingest(p.string(), 1) == std::vector<double>{1.5, 2.5});
  CHECK_THROWS_AS(ingest(p.string(), 0), std::domain_error);  // non-numeric field
  CHECK_THROWS_AS(ingest(p.string(), 5), std::domain_error);  // missing field
}

TEST_CASE("ingest: errors carry the file name and line number") {
  const fs::path p = temp_file("ingest_bad.txt", "1\nnope\n3\n");
  try {
    ingest(p.string());
    FAIL("expected a parse error");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find(p.filename().string()) != std::string::npos);
    CHECK(msg.find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest((fs::temp_directory_path() / "missing.txt").string()),
                  std::domain_error);
  const fs::path empty = temp_file("ingest_empty.txt", "# only comments\n");
  CHECK_THROWS_AS(ingest(empty.string()), std::domain_error);
}

TEST_CASE("estimate: trimmed fixture through the JSON report") {
  const fs::path data = temp_file("est_data.txt", "10\n1\n2\n3\n100\n");
  const fs::path out = fs::temp_directory_path() / "est_out.json";
  CHECK(cli({"estimate", data.string(), "--k", "1", "--json", out.string()}) == 0);
  const std::string j = slurp(out);
  CHECK(j.find("\"estimate\": 5.0") != std::string::npos);
  CHECK(j.find("\"n\": 5") != std::string::npos);
  CHECK(j.find("\"seed\": 20240501") != std::string::npos);
  // Column selection reaches the same numbers from a CSV.
  const fs::path csv = temp_file("est_data.csv", "x,10\nx,1\nx,2\nx,3\nx,100\n");
  CHECK(cli({"estimate", csv.string(), "--column", "1", "--k", "1",
             "--json", out.string()}) == 0);
  CHECK(slurp(out).find("\"estimate\": 5.0") != std::string::npos);
}

TEST_CASE("estimate: validation failures exit with code 1") {
  const fs::path data = temp_file("est_small.txt", "1\n2\n3\n");
  CHECK(cli({"estimate", data.string(), "--k", "2"}) == 1);            // nothing retained
  CHECK(cli({"estimate", data.string(), "--estimator", "nope"}) == 1); // unknown estimator
  CHECK(cli({"estimate", "/no/such/file"}) == 1);
  CHECK(cli({"estimate"}) == 1);                                       // missing argument
  CHECK(cli({}) == 1);                                                 // missing subcommand
  CHECK(cli({"estimate", data.string(), "--bogus-flag"}) == 1);
}

TEST_CASE("tune contaminated: JSON fixture n=1000 eps=0.01 alpha=0.05") {
  const fs::path out = fs::temp_directory_path() / "tune_out.json";
  CHECK(cli({"tune", "contaminated", "--n", "1000", "--eps", "0.01", "--alpha", "0.05",
             "--json", out.string()}) == 0);
  const std::string j = slurp(out);
  CHECK(j.find("\"k\": 15") != std::string::npos);
  CHECK(j.find("\"d\": 0.05808") != std::string::npos);
  CHECK(j.find("\"feasible\": true") != std::string::npos);
  CHECK(cli({"tune", "bogus-regime"}) == 1);
}

TEST_CASE("ci: runs end to end and reports the plan") {
  std::string body;
  for (int i = 0; i < 100; ++i) body += std::to_string(i % 10) + "\n";
  const fs::path data = temp_file("ci_data.txt", body);
  const fs::path out = fs::temp_directory_path() / "ci_out.json";
  CHECK(cli({"ci", data.string(), "--alpha", "0.05", "--delta", "0.1",
             "--json", out.string()}) == 0);
  const std::string j = slurp(out);
  CHECK(j.find("\"k\": 8") != std::string::npos);
  CHECK(j.find("\"x\": 1.9599639845") != std::string::npos);
  CHECK(j.find("\"center\"") != std::string::npos);
  CHECK(j.find("\"half_width\"") != std::string::npos);
}

TEST_CASE("verify: exit codes and JSON verdicts") {
  const fs::path out = fs::temp_directory_path() / "verify_out.json";
  CHECK(cli({"verify", "order-stat-upper", "--n", "100", "--k", "1", "--t", "1",
             "--reps", "2000", "--json", out.string()}) == 0);
  const std::string j = slurp(out);
  CHECK(j.find("\"verdict\": \"consistent\"") != std::string::npos);
  CHECK(j.find("\"inequality\": \"order-stat-upper\"") != std::string::npos);
  CHECK(cli({"verify", "no-such-inequality"}) == 1);
}

TEST_CASE("simulate: JSON output is byte-identical across reruns and policies") {
  const fs::path a = fs::temp_directory_path() / "sim_a.json";
  const fs::path b = fs::temp_directory_path() / "sim_b.json";
  const std::vector<std::string> base{"simulate", "--dist", "student_t:3", "--n", "500",
                                      "--reps", "200", "--k", "4", "--seed", "7"};
  auto with_out = [&](const fs::path& p, bool serial) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--json", p.string()});
    if (serial) args.push_back("--serial");
    return args;
  };
  CHECK(cli(with_out(a, false)) == 0);
  CHECK(cli(with_out(b, false)) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(cli(with_out(b, true)) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("simulate: contaminated run works with global flags after the subcommand") {
  const fs::path out = fs::temp_directory_path() / "sim_att.csv";
  CHECK(cli({"simulate", "--dist", "normal:0,1", "--n", "200", "--reps", "50",
             "--k", "6", "--attack", "boundary", "--eps", "0.02",
             "--csv", out.string(), "--serial"}) == 0);
  const std::string c = slurp(out);
  CHECK(c.rfind("replicate,estimate\n", 0) == 0);
  CHECK(std::count(c.begin(), c.end(), '\n') == 51);
}

TEST_CASE("violin: CSV table has the full paired layout") {
  const fs::path out = fs::temp_directory_path() / "violin.csv";
  CHECK(cli({"violin", "--csv", out.string()}) == 0);
  const std::string c = slurp(out);
  CHECK(c.rfind("estimator,dof,replicate,estimate\n", 0) == 0);
  CHECK(std::count(c.begin(), c.end(), '\n') == 1201);
  CHECK(c.find("catoni,1,") != std::string::npos);
  CHECK(c.find("trimmed_k6,2.5,") != std::string::npos);
  // Deterministic: a serial rerun reproduces the bytes.
  const fs::path out2 = fs::temp_directory_path() / "violin2.csv";
  CHECK(cli({"violin", "--csv", out2.string(), "--serial"}) == 0);
  CHECK(slurp(out2) == c);
}
