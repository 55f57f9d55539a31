#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

std::string temp_path(std::string const& tag) {
  static int counter = 0;
  return "/tmp/nettomo_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + "_" +
         tag;
}

struct CliRun {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

CliRun run_cli(std::string const& args) {
  std::string capture = temp_path("out.txt");
  std::string cmd = std::string(NETTOMO_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  int raw = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::stringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::remove(capture.c_str());
  return r;
}

std::string data(std::string const& name) {
  return std::string(NETTOMO_DATA_DIR) + "/" + name;
}

std::string write_temp(std::string const& tag, std::string const& content) {
  std::string path = temp_path(tag);
  std::ofstream(path) << content;
  return path;
}

bool has(CliRun const& r, std::string const& needle) {
  return r.output.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("plan").exit_code == 1);  // --network is required
  CHECK(run_cli("verify bogus-scope").exit_code == 1);
  CHECK(run_cli("simulate --network x --plan y --trials 1").exit_code == 1);
}

TEST_CASE("plan builds a cover and writes a loadable plan") {
  std::string out = temp_path("plan.json");
  CliRun r = run_cli("plan --network " + data("demo_net.json") + " --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(has(r, "probes (6):"));
  CHECK(has(r, "bound 3 (attained)"));
  CHECK(has(r, "identifiable: yes"));
  CHECK(has(r, "plan written to"));

  std::ifstream in(out);
  REQUIRE(in.good());
  nlohmann::json plan = nlohmann::json::parse(in);
  REQUIRE(plan.is_array());
  CHECK(plan.size() == 6);
  for (auto const& p : plan) {
    CHECK(p.contains("walk"));
    CHECK(p.contains("impl"));
    CHECK(p["N"].get<double>() == 100.0);
  }
  std::remove(out.c_str());
}

TEST_CASE("analyze reports the FIM and closed forms") {
  CliRun r =
      run_cli("analyze --network " + data("demo_net.json") + " --plan " + data("demo_plan.json"));
  CHECK(r.exit_code == 0);
  CHECK(has(r, "identifiable: yes"));
  CHECK(has(r, "det(FIM)"));
  CHECK(has(r, "Tr(FIM^-1)"));
  CHECK(has(r, "closed forms"));
  CHECK(has(r, "6.31988"));  // Tr(FIM^-1) of the demo plan
}

TEST_CASE("analyze diagnoses an empty plan without failing") {
  std::string plan = write_temp("empty_plan.json", "[]\n");
  CliRun r = run_cli("analyze --network " + data("demo_net.json") + " --plan " + plan);
  CHECK(r.exit_code == 0);
  CHECK(has(r, "identifiable: no"));
  std::remove(plan.c_str());
}

TEST_CASE("missing and invalid input files exit 1 with a reason") {
  CliRun missing = run_cli("analyze --network /nonexistent_net.json --plan " +
                           data("demo_plan.json"));
  CHECK(missing.exit_code == 1);
  CHECK(has(missing, "cannot-open-file"));

  std::string bad = write_temp("bad_net.json", R"({
    "nodes": [1, 2],
    "monitors": [9],
    "edges": [{"id": "a", "u": 1, "v": 2}]
  })");
  CliRun invalid = run_cli("plan --network " + bad);
  CHECK(invalid.exit_code == 1);
  CHECK(has(invalid, "invalid-network"));
  std::remove(bad.c_str());
}

TEST_CASE("compare of a plan against itself favors neither") {
  std::string net = data("demo_net.json");
  std::string plan = data("demo_plan.json");
  CliRun r = run_cli("compare --network " + net + " --plan " + plan + " --plan " + plan);
  CHECK(r.exit_code == 0);
  CHECK(has(r, "better by det: plan neither"));
  CHECK(has(r, "better by trace: plan neither"));

  CHECK(run_cli("compare --network " + net + " --plan " + plan).exit_code == 1);
}

TEST_CASE("sweep emits the CSV grid") {
  CliRun to_stdout = run_cli("sweep --grid 0.2:0.8:3");
  CHECK(to_stdout.exit_code == 0);
  CHECK(has(to_stdout, "eta1,eta2,det_s,det_e,trinv_s,trinv_e,diff_det,diff_trinv"));

  std::string out = temp_path("grid.csv");
  CliRun to_file = run_cli("sweep shared-split --grid 0.2:0.8:3 --out " + out);
  CHECK(to_file.exit_code == 0);
  CHECK(has(to_file, "grid written to"));

  std::ifstream in(out);
  REQUIRE(in.good());
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 10);  // header + 3x3 grid
  std::remove(out.c_str());

  CHECK(run_cli("sweep --grid nonsense").exit_code == 1);
}

TEST_CASE("simulate prints the CRB comparison") {
  CliRun r = run_cli("simulate --network " + data("demo_net.json") + " --plan " +
                     data("demo_plan.json") + " --trials 5 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(has(r, "trials: 5   converged: 5"));
  CHECK(has(r, "CRB trace"));
  CHECK(has(r, "ratio"));
}

TEST_CASE("verify scopes pass clean and fail when corrupted") {
  CliRun physics = run_cli("verify physics");
  CHECK(physics.exit_code == 0);
  CHECK(has(physics, "[PASS]"));
  CHECK(has(physics, "checks passed"));
  CHECK_FALSE(has(physics, "[FAIL]"));

  CliRun corrupted = run_cli("verify claim1 --bias 0.01");
  CHECK(corrupted.exit_code == 2);
  CHECK(has(corrupted, "[FAIL]"));
}
