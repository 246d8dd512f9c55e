#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "nomaee/cli.hpp"

using namespace nomaee;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sweep emits one data row per axis value plus a header") {
  TempFile out("sweep.csv");
  RunSpec spec;
  spec.command = Command::Sweep;
  spec.axis = SweepAxis::Rt;
  spec.axis_values = {3.0, 4.0, 5.0};
  spec.trials = 4;
  spec.out_path = out.path;
  spec.overrides = {"seed=5"};
  std::ostringstream diag;
  REQUIRE(run(spec, diag) == 0);
  const std::string text = slurp(out.path);
  CHECK(count_lines(text) == 4);  // header + 3 rows
  CHECK(text.rfind("axis_value,", 0) == 0);
}

TEST_CASE("identical spec and seed produce byte-identical outputs") {
  for (const char* fmt : {"csv", "json"}) {
    TempFile a(std::string("det_a.") + fmt), b(std::string("det_b.") + fmt);
    RunSpec spec;
    spec.command = Command::Simulate;
    spec.trials = 6;
    spec.seed = 42;
    spec.format = (std::string(fmt) == "json") ? OutputFormat::Json : OutputFormat::Csv;
    std::ostringstream diag;
    spec.out_path = a.path;
    REQUIRE(run(spec, diag) == 0);
    spec.out_path = b.path;
    REQUIRE(run(spec, diag) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
  }
}

TEST_CASE("JSON output carries the fully-resolved config") {
  TempFile out("sim.json");
  RunSpec spec;
  spec.command = Command::Simulate;
  spec.trials = 2;
  spec.format = OutputFormat::Json;
  spec.out_path = out.path;
  spec.overrides = {"M=64", "P_c=7 dBm"};
  std::ostringstream diag;
  REQUIRE(run(spec, diag) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["config"]["M"] == 64);
  CHECK(j["config"]["P_c"].get<double>() == Catch::Approx(dbm_to_watt(7.0)).epsilon(1e-12));
  CHECK(j["config"]["D"] == 500.0);  // default materialized
  CHECK(j["trials"].size() == 2);
  // EE stored in bit/J in JSON
  CHECK(j["trials"][0]["proposed"]["ee_bit_per_joule"].get<double>() > 1e4);
}

TEST_CASE("config file loading with overrides on top") {
  TempFile cfg_file("cfg.txt");
  {
    std::ofstream f(cfg_file.path);
    f << "M = 32\nseed = 11\n";
  }
  TempFile out("from_file.csv");
  RunSpec spec;
  spec.command = Command::Simulate;
  spec.config_path = cfg_file.path;
  spec.trials = 2;
  spec.out_path = out.path;
  spec.overrides = {"M=64"};  // override wins over the file
  spec.format = OutputFormat::Json;
  std::ostringstream diag;
  REQUIRE(run(spec, diag) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["config"]["M"] == 64);
  CHECK(j["config"]["seed"] == 11);
}

TEST_CASE("bad config path, bad output path and bad overrides fail nonzero") {
  RunSpec spec;
  spec.command = Command::Simulate;
  spec.trials = 1;
  spec.config_path = "does_not_exist.cfg";
  std::ostringstream diag;
  CHECK(run(spec, diag) != 0);
  CHECK(diag.str().find("error") != std::string::npos);

  RunSpec bad_out;
  bad_out.command = Command::Simulate;
  bad_out.trials = 1;
  bad_out.out_path = "no_such_dir/x/y.csv";
  std::ostringstream diag2;
  CHECK(run(bad_out, diag2) != 0);

  RunSpec bad_ov;
  bad_ov.command = Command::Simulate;
  bad_ov.trials = 1;
  bad_ov.overrides = {"epsilon=9"};
  std::ostringstream diag3;
  CHECK(run(bad_ov, diag3) != 0);
}

TEST_CASE("oracle-check emits per-trial gap rows") {
  TempFile out("oracle.csv");
  RunSpec spec;
  spec.command = Command::OracleCheck;
  spec.trials = 2;
  spec.seed = 3;
  spec.out_path = out.path;
  std::ostringstream diag;
  REQUIRE(run(spec, diag) == 0);
  const std::string text = slurp(out.path);
  CHECK(count_lines(text) == 3);  // header + 2 rows
  CHECK(text.rfind("trial,seed,ee_solver,ee_oracle,", 0) == 0);
}

TEST_CASE("simulate CSV has the documented header and row count") {
  TempFile out("sim.csv");
  RunSpec spec;
  spec.command = Command::Simulate;
  spec.trials = 3;
  spec.out_path = out.path;
  std::ostringstream diag;
  REQUIRE(run(spec, diag) == 0);
  const std::string text = slurp(out.path);
  CHECK(count_lines(text) == 4);
  CHECK(text.rfind("trial,seed,alpha,ee_proposed,ee_baseline,ee_equal,", 0) == 0);
}
