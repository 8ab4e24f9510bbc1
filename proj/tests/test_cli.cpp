#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapoly/grid.hpp"
#include "lapoly/polynomial.hpp"
#include "lapoly/solver.hpp"
#include "lapoly/spectrum.hpp"
#include "lapoly/timestep.hpp"

using namespace lapoly;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("lapoly_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out_" + std::to_string(counter) + ".txt");
  const fs::path err = scratch_dir() / ("err_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env_prefix + LAPOLY_CLI_PATH " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

// Data rows of a CSV body; header lines start with a letter, comments with #.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

} // namespace

TEST_CASE("solve writes the quadratic profile as CSV") {
  const RunResult r = run_cli("solve --dim 1 --n 63 --poly 0,1 --rhs ones");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("index,coord_1,value\n", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 63);
  double worst = 0.0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 3);
    const double t = std::stod(row[1]);
    const double v = std::stod(row[2]);
    worst = std::max(worst, std::abs(v - 0.5 * t * (1.0 - t)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("solve 2D emits one coordinate column per axis") {
  const RunResult r = run_cli("solve --dim 2 --n 4 --poly 1 --rhs ones");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("index,coord_1,coord_2,value\n", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 16);
  // P = 1 is the identity, so the solution is the all-ones input.
  for (const auto& row : rows) CHECK(std::stod(row[3]) == 1.0);
}

TEST_CASE("values survive a text round trip at 17 digits") {
  const RunResult r = run_cli("inverse --dim 1 --n 2 --poly 0,1 --entry 1,1");
  REQUIRE(r.exit_code == 0);
  const double got = std::stod(r.out);
  const Spectrum s = make_spectrum(make_grid({2}));
  CHECK(got == inverse_entry(s, MatrixPolynomial::parse("0,1"), 1, 1));
}

TEST_CASE("inverse entry as json") {
  const RunResult r =
      run_cli("inverse --dim 1 --n 2 --poly 0,1 --entry 2,1 --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("i") == 2);
  CHECK(j.at("k") == 1);
  CHECK(std::abs(j.at("value").get<double>() - 1.0 / 27) <= 1e-14);
}

TEST_CASE("full inverse of the N=2 line") {
  const RunResult r = run_cli("inverse --dim 1 --n 2 --poly 0,1 --full");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("i,k,value\n", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(std::stod(rows[0][2]) - 2.0 / 27) <= 1e-13);
  CHECK(std::abs(std::stod(rows[1][2]) - 1.0 / 27) <= 1e-13);

  const RunResult j = run_cli("inverse --dim 1 --n 2 --poly 0,1 --full --format json");
  REQUIRE(j.exit_code == 0);
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(std::abs(parsed.at("values")[0][0].get<double>() - 2.0 / 27) <= 1e-13);
}

TEST_CASE("invalid input exits with 2") {
  CHECK(run_cli("solve --dim 1 --n 16 --poly abc --rhs ones").exit_code == 2);
  CHECK(run_cli("inverse --dim 1 --n 8 --poly 0,1 --entry 9,1").exit_code == 2);
  CHECK(run_cli("inverse --dim 1 --n 8 --poly 0,1 --entry 1,1 --full").exit_code == 2);
  CHECK(run_cli("inverse --dim 1 --n 8 --poly 0,1").exit_code == 2);
  CHECK(run_cli("inverse --dim 1 --n 5000 --poly 0,1 --full").exit_code == 2);
  CHECK(run_cli("solve --dim 1 --poly 0,1 --rhs ones").exit_code == 2);
  CHECK(run_cli("solve --dim 1 --n 4 --poly 0,1 --rhs ones --bc robin").exit_code == 2);
  CHECK(run_cli("solve --dim 1 --n 4 --poly 0,1 --rhs nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("a singular operator exits with 3 and names the mode") {
  const RunResult r = run_cli("solve --dim 1 --n 2 --poly -9,1 --rhs ones");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("mode 1") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}

TEST_CASE("right-hand side from a file") {
  const fs::path rhs = write_file("rhs_two.txt", "0.25\n-0.5\n");
  const RunResult r =
      run_cli("solve --dim 1 --n 2 --poly 1 --rhs file:" + rhs.string());
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[0][2]) == 0.25);
  CHECK(std::stod(rows[1][2]) == -0.5);

  const fs::path short_rhs = write_file("rhs_short.txt", "1.0\n");
  CHECK(run_cli("solve --dim 1 --n 2 --poly 1 --rhs file:" + short_rhs.string())
            .exit_code == 2);
  const fs::path long_rhs = write_file("rhs_long.txt", "1\n2\n3\n");
  CHECK(run_cli("solve --dim 1 --n 2 --poly 1 --rhs file:" + long_rhs.string())
            .exit_code == 2);
  CHECK(run_cli("solve --dim 1 --n 2 --poly 1 --rhs file:/no/such/file.txt")
            .exit_code == 2);
}

TEST_CASE("right-hand side as a single mode") {
  const RunResult r = run_cli("solve --dim 1 --n 4 --poly 1 --rhs mode:2");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  for (std::int64_t j = 1; j <= 4; ++j)
    CHECK(std::abs(std::stod(rows[j - 1][2]) -
                   axis_eigenvector_entry(2, j, 4, BoundaryKind::DirichletBoth)) <=
          1e-15);
  CHECK(run_cli("solve --dim 1 --n 4 --poly 1 --rhs mode:5").exit_code == 2);
}

TEST_CASE("evolve prints one block per snapshot") {
  const RunResult r = run_cli(
      "evolve --dim 1 --n 8 --poly 0,1 --rhs ones --dt 1e-3 --steps 5 --snapshots 0,5");
  REQUIRE(r.exit_code == 0);
  CHECK(count_occurrences(r.out, "# step=0 ") == 1);
  CHECK(count_occurrences(r.out, "# step=5 ") == 1);
  const auto rows = csv_rows(r.out);
  CHECK(rows.size() == 16);
  CHECK(run_cli("evolve --dim 1 --n 8 --poly 0,1 --rhs ones --dt 1e-3 --steps 5 "
                "--snapshots 0,7")
            .exit_code == 2);
  CHECK(run_cli("evolve --dim 1 --n 8 --poly 0,1 --rhs ones").exit_code == 2);
}

TEST_CASE("evolve from a config file matches the library") {
  nlohmann::json config;
  config["grid"] = {{"dim", 1}, {"n_per_axis", {8}}};
  config["polynomial"] = "0,1";
  config["rhs"] = "ones";
  config["evolution"] = {{"scheme", "trapezoidal"},
                         {"dt", 2e-3},
                         {"steps", 40},
                         {"snapshots", {10, 40}}};
  config["format"] = "json";
  const fs::path path = write_file("evolve_config.json", config.dump());

  const RunResult r = run_cli("evolve --config " + path.string());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("snapshots").size() == 2);
  CHECK(j.at("snapshots")[0].at("step") == 10);
  CHECK(j.at("snapshots")[1].at("step") == 40);
  CHECK(j.at("snapshots")[1].at("t").get<double>() ==
        doctest::Approx(0.08).epsilon(1e-12));

  const Grid grid = make_grid({8});
  const Spectrum s = make_spectrum(grid);
  const EvolutionSpec spec = make_evolution_spec(TimeScheme::Trapezoidal, 2e-3, 40,
                                                 MatrixPolynomial::parse("0,1"));
  const std::vector<Field> want =
      evolve(s, spec, make_field(grid, 1.0), make_snapshot_plan({10, 40}, 40));
  for (int snap = 0; snap < 2; ++snap) {
    const auto& values = j.at("snapshots")[snap].at("values");
    REQUIRE(values.size() == 8);
    for (int i = 0; i < 8; ++i)
      CHECK(values[i].get<double>() == want[snap].values[i]);
  }
}

TEST_CASE("unknown config keys are rejected") {
  const fs::path bad_top = write_file(
      "bad_top.json",
      R"({"grid":{"dim":1,"n_per_axis":[4]},"polynomial":"0,1","rhs":"ones","surprise":1})");
  CHECK(run_cli("solve --config " + bad_top.string()).exit_code == 2);

  const fs::path bad_grid = write_file(
      "bad_grid.json",
      R"({"grid":{"dim":1,"n_per_axis":[4],"spacing":0.1},"polynomial":"0,1","rhs":"ones"})");
  CHECK(run_cli("solve --config " + bad_grid.string()).exit_code == 2);

  const fs::path not_json = write_file("not_json.json", "{nope");
  CHECK(run_cli("solve --config " + not_json.string()).exit_code == 2);
  CHECK(run_cli("solve --config /no/such/config.json").exit_code == 2);
}

TEST_CASE("flags override the config file") {
  const fs::path config = write_file(
      "override.json",
      R"({"grid":{"dim":1,"n_per_axis":[4]},"polynomial":"0,1","rhs":"ones"})");
  const RunResult r = run_cli("solve --config " + config.string() + " --n 8 --poly 1");
  REQUIRE(r.exit_code == 0);
  CHECK(csv_rows(r.out).size() == 8);
}

TEST_CASE("output lands in the requested file") {
  const fs::path target = scratch_dir() / "solution.csv";
  const RunResult r = run_cli("solve --dim 1 --n 4 --poly 0,1 --rhs ones --output " +
                              target.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(target).rfind("index,coord_1,value\n", 0) == 0);
  CHECK(run_cli("solve --dim 1 --n 4 --poly 0,1 --rhs ones --output /no/such/dir/x.csv")
            .exit_code != 0);
}

TEST_CASE("solve output does not depend on the worker count") {
  const std::string args = "solve --dim 2 --n 9 --poly 1,1,1 --rhs ones";
  const RunResult one = run_cli(args, "LAPOLY_THREADS=1 ");
  const RunResult three = run_cli(args, "LAPOLY_THREADS=3 ");
  REQUIRE(one.exit_code == 0);
  REQUIRE(three.exit_code == 0);
  CHECK(one.out == three.out);
  CHECK(run_cli(args, "LAPOLY_THREADS=bogus ").exit_code == 2);
}

TEST_CASE("verify passes on reduced sizes") {
  const RunResult r =
      run_cli("verify --sweep-max-n 24 --poisson-n 8 --evolve-n 12 --evolve-steps 40");
  CHECK(r.exit_code == 0);
  CHECK(count_occurrences(r.out, "PASS") == 3);
  CHECK(count_occurrences(r.out, "FAIL") == 0);
}

TEST_CASE("bench reports spectral and iterative timings") {
  const RunResult r =
      run_cli("bench --dim 1 --n 12 --poly 0,1 --taus 1,5 --skip-iterative-above 1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("tau") == 1);
  CHECK(j[0].at("spectral_seconds").get<double>() > 0.0);
  CHECK(j[0].at("iterative_seconds").get<double>() > 0.0);
  CHECK(j[1].at("tau") == 5);
  CHECK(j[1].at("iterative_seconds").is_null());

  const RunResult csv = run_cli("bench --dim 1 --n 12 --poly 0,1 --taus 2 --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("tau,spectral_seconds,iterative_seconds\n", 0) == 0);
  CHECK(csv_rows(csv.out).size() == 1);
}
