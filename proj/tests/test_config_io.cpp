#include <catch2/catch_amalgamated.hpp>

#include "nomaee/config_io.hpp"

using namespace nomaee;

TEST_CASE("empty file yields the default config") {
  const SystemConfig cfg = parse_config("");
  CHECK(cfg.D == 500.0);
  CHECK(cfg.B == 120e3);
  CHECK(cfg.M == 128);
  CHECK(cfg.K == 3);
  CHECK(cfg.sigma2_dB == 10.0);
  CHECK(cfg.phi == 1.0);
  CHECK(cfg.N0 == Catch::Approx(1e-20).epsilon(1e-12));
  CHECK(cfg.R_T == 3.0);
  CHECK(cfg.tau == 1e-5);
  CHECK(cfg.theta1 == 1e-2);
  CHECK(cfg.theta2 == 1e-2);
  CHECK(cfg.max_iters == 10000);
  CHECK(cfg.d_min == 35.0);
}

TEST_CASE("keys, comments and unit suffixes") {
  const SystemConfig cfg = parse_config(
      "# a comment line\n"
      "M = 64\n"
      "K = 2   # trailing comment\n"
      "N0 = -170 dBm/Hz\n"
      "P_T = 30 dBm\n"
      "P_c = 0.005 W\n"
      "\n"
      "seed = 99\n");
  CHECK(cfg.M == 64);
  CHECK(cfg.K == 2);
  CHECK(cfg.N0 == Catch::Approx(1e-20).epsilon(1e-12));
  CHECK(cfg.P_T == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(cfg.P_c == Catch::Approx(0.005).epsilon(1e-12));
  CHECK(cfg.seed == 99);
}

TEST_CASE("errors name the offending line") {
  CHECK_THROWS_AS(parse_config("unknown_key = 1\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config("M = twelve\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config("M 128\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config("P_T = 1 parsec\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config("B = 1 dBm\n"), ConfigParseError);  // unit not valid for key
  try {
    parse_config("M = 128\nK = oops\n");
    FAIL("expected a parse error");
  } catch (const ConfigParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("invariant violations are rejected with the field named") {
  CHECK_THROWS_AS(parse_config("epsilon = 7\n"), ConfigError);
  try {
    parse_config("epsilon = 7\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("K = 0\n"), ConfigError);
}

TEST_CASE("overrides compose left to right, last wins") {
  SystemConfig cfg;
  apply_override(cfg, "M=32");
  CHECK(cfg.M == 32);
  apply_override(cfg, "M=96");
  CHECK(cfg.M == 96);
  apply_override(cfg, "P_c=7 dBm");
  CHECK(cfg.P_c == Catch::Approx(dbm_to_watt(7.0)).epsilon(1e-12));
  CHECK_THROWS_AS(apply_override(cfg, "nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(cfg, "bogus_key=3"), ConfigParseError);
}
