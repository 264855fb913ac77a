// End-to-end checks of the command-line tool: exit codes, determinism,
// and artifact emission.  The binary path comes from COCHORD_CLI.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
  const char* p = std::getenv("COCHORD_CLI");
  return p ? p : "";
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  os << text;
}

}  // namespace

TEST_CASE("closed-form capacity job") {
  REQUIRE(!cli_path().empty());
  write_file("/tmp/cochord_ball.json", R"({"ellipsoid":{"radii":[1,1]}})");
  const int rc = run(
      "capacity --body /tmp/cochord_ball.json --n 2 --k 1 "
      "--method closed_form --out /tmp/cochord_cap.json");
  CHECK(rc == 0);
  const std::string out = slurp("/tmp/cochord_cap.json");
  CHECK(out.find("1.5707963267948966") != std::string::npos);
  CHECK(out.find("closed-form") != std::string::npos);
}

TEST_CASE("solver capacity job with carrier CSV is deterministic") {
  REQUIRE(!cli_path().empty());
  write_file("/tmp/cochord_disc.json", R"({"ball":{"dim":2,"radius":1}})");
  const std::string args =
      "capacity --body /tmp/cochord_disc.json --n 1 --k 0 --method solver "
      "--N 64 --seed 5 --restarts 3 --csv /tmp/cochord_carrier.csv";
  CHECK(run(args + " --out /tmp/cochord_s1.json") == 0);
  CHECK(run(args + " --out /tmp/cochord_s2.json") == 0);
  const std::string a = slurp("/tmp/cochord_s1.json");
  CHECK(a == slurp("/tmp/cochord_s2.json"));
  CHECK(a.find("dual-solver") != std::string::npos);
  const std::string csv = slurp("/tmp/cochord_carrier.csv");
  CHECK(csv.rfind("t,q1,p1", 0) == 0);
}

TEST_CASE("schema errors exit 2") {
  REQUIRE(!cli_path().empty());
  write_file("/tmp/cochord_bad.json", R"({"ufo":{"radii":[1]}})");
  CHECK(run("capacity --body /tmp/cochord_bad.json --n 1 --k 0 "
            "--out /tmp/cochord_ignored.json") == 2);
  write_file("/tmp/cochord_badjob.json", R"({"command":"capacity","junk":1})");
  CHECK(run("capacity --job /tmp/cochord_badjob.json") == 2);
}

TEST_CASE("domain errors exit 3") {
  REQUIRE(!cli_path().empty());
  // A ball that misses the frame subspace entirely.
  write_file("/tmp/cochord_far.json",
             R"({"ball":{"center":[0,0,0,5],"radius":1}})");
  CHECK(run("capacity --body /tmp/cochord_far.json --n 2 --k 1 "
            "--method solver --N 32 --out /tmp/cochord_ignored.json") == 3);
}

TEST_CASE("spectrum job emits the chord CSV") {
  REQUIRE(!cli_path().empty());
  CHECK(run("spectrum --n 2 --k 1 --radii 1 --radii 1 --cutoff 7 "
            "--csv /tmp/cochord_spec.csv --out /tmp/cochord_spec.json") == 0);
  const std::string csv = slurp("/tmp/cochord_spec.csv");
  CHECK(csv.rfind("action,class,axis,multiple", 0) == 0);
  CHECK(csv.find("V0") != std::string::npos);
  CHECK(csv.find("V1") != std::string::npos);
}

TEST_CASE("chord job reports the closed-form action") {
  REQUIRE(!cli_path().empty());
  CHECK(run("chord --n 2 --k 1 --a 0.6 --radius 1 "
            "--out /tmp/cochord_chord.json") == 0);
  const std::string out = slurp("/tmp/cochord_chord.json");
  CHECK(out.find("0.44729521800161") != std::string::npos);
}

TEST_CASE("check job runs a named inequality") {
  REQUIRE(!cli_path().empty());
  write_file("/tmp/cochord_ball4.json", R"({"ball":{"dim":4,"radius":1}})");
  CHECK(run("check --name j_norm --body /tmp/cochord_ball4.json --n 2 --k 0 "
            "--out /tmp/cochord_check.json") == 0);
  const std::string out = slurp("/tmp/cochord_check.json");
  CHECK(out.find("\"holds\": true") != std::string::npos);
}

TEST_CASE("flow method on a quadratic surface") {
  REQUIRE(!cli_path().empty());
  write_file("/tmp/cochord_flowball.json", R"({"ellipsoid":{"radii":[1,1,1]}})");
  CHECK(run("capacity --body /tmp/cochord_flowball.json --n 3 --k 1 "
            "--method flow --out /tmp/cochord_flow.json") == 0);
  const std::string out = slurp("/tmp/cochord_flow.json");
  CHECK(out.find("\"flow\"") != std::string::npos);
  CHECK(out.find("1.5707963267948966") != std::string::npos);
}

TEST_CASE("corpus job emits the golden table with small errors") {
  REQUIRE(!cli_path().empty());
  CHECK(run("corpus --N 96 --restarts 4 --seed 2 "
            "--out /tmp/cochord_corpus.json --csv /tmp/cochord_corpus.csv") ==
        0);
  const std::string out = slurp("/tmp/cochord_corpus.json");
  CHECK(out.find("\"all_within_tolerance\": true") != std::string::npos);
  const std::string csv = slurp("/tmp/cochord_corpus.csv");
  CHECK(csv.rfind("formula_id,expected,computed,rel_error", 0) == 0);
}

TEST_CASE("job files drive the run end to end") {
  REQUIRE(!cli_path().empty());
  write_file("/tmp/cochord_job.json", R"({
    "command": "capacity",
    "body": {"polydisc": {"radii": [1, "1.4142135623730951"]}},
    "frame": {"n": 2, "k": 1},
    "method": "closed_form",
    "out": "/tmp/cochord_job_out.json"
  })");
  CHECK(run("capacity --job /tmp/cochord_job.json") == 0);
  const std::string out = slurp("/tmp/cochord_job_out.json");
  CHECK(out.find("3.14159265") != std::string::npos);
  CHECK(out.find("polydisc") != std::string::npos);
}
