#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = TG_CLI_PATH;
const std::string kScenarios = TG_SCENARIO_DIR;

struct RunResult {
  int exit_code;
  std::string stdout_text;
  std::string stderr_text;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  const std::string out = "/tmp/tg_cli_out.txt";
  const std::string err = "/tmp/tg_cli_err.txt";
  const std::string cmd = kCli + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/" + name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

}  // namespace

TEST_CASE("simulate emits the CSV table") {
  const auto r = run("simulate --scenario " + kScenarios +
                     "/baseline.toml --t-start 0 --t-end 2 --t-step 1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.rfind("t,Q,Y,wage,rent,", 0) == 0);
  // header + 3 rows + trailing newline
  int lines = 0;
  for (char c : r.stdout_text) lines += (c == '\n');
  CHECK(lines == 4);
}

TEST_CASE("simulate JSON output parses") {
  const auto r = run("simulate --scenario " + kScenarios +
                     "/baseline.toml --t-end 1 --t-step 1 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"labor_share\"") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2 and name the field") {
  const auto missing = write_temp("tg_missing_labor.toml", R"(
[production]
family = "cobb-douglas"
beta = 0.5
[tasks]
alpha_c = 1e14
alpha_p = 1e21
[labor]
g_L = 0.0
[compute]
kind = "exponential"
Q0 = 1e22
g = 0.2
[simulation]
t_start = 0.0
t_end = 10.0
t_step = 1.0
)");
  const auto r = run("simulate --scenario " + missing);
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("labor.L0") != std::string::npos);

  const auto bad_step = run("simulate --scenario " + kScenarios +
                            "/baseline.toml --t-step 0");
  CHECK(bad_step.exit_code == 2);
}

TEST_CASE("thresholds report for the baseline scenario") {
  const auto r = run("thresholds --scenario " + kScenarios + "/baseline.toml");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("cognitive_automation_time: " + sci(std::log(10.0) / 0.2)) !=
        std::string::npos);
  CHECK(r.stdout_text.find("physical_automation_time: " + sci(std::log(1e8) / 0.2)) !=
        std::string::npos);
  CHECK(r.stdout_text.find("cognitive_threshold_compute: " + sci(1e23)) !=
        std::string::npos);

  const auto inf = run("thresholds --scenario " + kScenarios + "/baseline_alpha_p_inf.toml");
  CHECK(inf.exit_code == 0);
  CHECK(inf.stdout_text.find("physical_automation_time: not-reached") !=
        std::string::npos);

  const auto bounded = run("thresholds --scenario " + kScenarios + "/baseline_bounded.toml");
  CHECK(bounded.exit_code == 0);
  CHECK(bounded.stdout_text.find("persistence: true") != std::string::npos);
}

TEST_CASE("decompose reports closed form vs numeric") {
  const auto r = run("decompose --scenario " + kScenarios +
                     "/baseline.toml --window 20,80 --step 0.1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("closed_form_g_Y: " + sci(0.5 * 0.2)) != std::string::npos);
  const auto pos = r.stdout_text.find("difference: ");
  REQUIRE(pos != std::string::npos);
  const double diff = std::strtod(r.stdout_text.c_str() + pos + 12, nullptr);
  CHECK(std::abs(diff) <= 1e-3);
}

TEST_CASE("sweep over alpha_p: threshold time rises with the cost") {
  const auto r = run("sweep --scenario " + kScenarios +
                     "/baseline.toml --param tasks.alpha_p --range 1e18,1e24,7");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.stdout_text);
  std::string line;
  std::getline(in, line);  // header
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line) && !line.empty()) {
    const auto last = line.rfind(',');
    const double t = std::strtod(line.c_str() + last + 1, nullptr);
    CHECK(t > prev);
    prev = t;
    ++rows;
  }
  CHECK(rows == 7);
}

TEST_CASE("sweep over beta with infinite physical cost returns beta") {
  const auto r = run("sweep --scenario " + kScenarios +
                     "/baseline_alpha_p_inf.toml --param production.beta --range 0.1,0.9,9");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.stdout_text);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line) && !line.empty()) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // param
    std::getline(cells, cell, ',');  // value
    const double beta = std::strtod(cell.c_str(), nullptr);
    std::getline(cells, cell, ',');  // regime
    std::getline(cells, cell, ',');  // share
    const double share = std::strtod(cell.c_str(), nullptr);
    CHECK(share == doctest::Approx(beta).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 9);

  const auto bad = run("sweep --scenario " + kScenarios +
                       "/baseline.toml --param tasks.alpha_p --range 1e18,1e24,1");
  CHECK(bad.exit_code == 2);
  const auto unknown = run("sweep --scenario " + kScenarios +
                           "/baseline.toml --param tasks.nope --range 1,2,3");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("solver failures exit with code 1") {
  const auto infeasible = write_temp("tg_infeasible.toml", R"(
[production]
family = "cobb-douglas"
beta = 0.5
[tasks]
alpha_c = 1e14
alpha_p = inf
[labor]
L0 = 1e9
g_L = -80.0
[compute]
kind = "exponential"
Q0 = 1e22
g = 0.2
[simulation]
t_start = 1000.0
t_end = 1001.0
t_step = 1.0
)");
  const auto r = run("simulate --scenario " + infeasible);
  CHECK(r.exit_code == 1);
}
