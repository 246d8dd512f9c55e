#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "nomaee/config.hpp"
#include "nomaee/geometry.hpp"

using namespace nomaee;

TEST_CASE("large-scale gain hand values") {
  // phi=1, no shadowing, d=100, eps=4
  CHECK(large_scale_gain(1.0, 0.0, 100.0, 4.0) == Catch::Approx(1e-8).epsilon(1e-12));
  // +10 dB shadowing scales by 10
  CHECK(large_scale_gain(1.0, 10.0, 100.0, 4.0) == Catch::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("beta strictly decreases in distance at fixed shadowing") {
  for (double eps : {2.0, 3.5, 5.0, 6.0}) {
    double prev = large_scale_gain(1.0, 3.0, 35.0, eps);
    for (double d = 60.0; d <= 500.0; d += 25.0) {
      const double b = large_scale_gain(1.0, 3.0, d, eps);
      CHECK(b < prev);
      prev = b;
    }
  }
}

TEST_CASE("geometry respects the annulus and the beta formula") {
  SystemConfig cfg;
  cfg.K = 64;
  std::mt19937_64 rng(42);
  const UserGeometry g = generate_user_geometry(cfg, rng);
  REQUIRE(g.users() == 64);
  for (int k = 0; k < g.users(); ++k) {
    CHECK(g.distances[k] >= cfg.d_min);
    CHECK(g.distances[k] <= cfg.D);
    CHECK(g.betas[k] > 0.0);
    const double expect =
        large_scale_gain(cfg.phi, g.shadow_dB[k], g.distances[k], cfg.epsilon);
    CHECK(g.betas[k] == Catch::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("placement is uniform in area, shadowing has the configured variance") {
  SystemConfig cfg;
  cfg.K = 1;
  std::mt19937_64 rng(11);
  const int n = 200000;
  int inner = 0;
  double sh_mean = 0.0, sh_m2 = 0.0;
  // the annulus half-area radius: d^2 uniform => P(d^2 <= midpoint) = 1/2
  const double mid2 = 0.5 * (cfg.d_min * cfg.d_min + cfg.D * cfg.D);
  for (int i = 0; i < n; ++i) {
    const UserGeometry g = generate_user_geometry(cfg, rng);
    if (g.distances[0] * g.distances[0] <= mid2) ++inner;
    const double s = g.shadow_dB[0];
    sh_mean += s;
    sh_m2 += s * s;
  }
  sh_mean /= n;
  sh_m2 /= n;
  const double frac = static_cast<double>(inner) / n;
  CHECK(frac == Catch::Approx(0.5).margin(3.0 * 0.5 / std::sqrt(static_cast<double>(n))));
  CHECK(sh_mean == Catch::Approx(0.0).margin(3.0 * std::sqrt(cfg.sigma2_dB / n)));
  CHECK(sh_m2 - sh_mean * sh_mean == Catch::Approx(cfg.sigma2_dB).epsilon(0.05));
}

TEST_CASE("geometry hash distinguishes draws and matches reruns") {
  SystemConfig cfg;
  std::mt19937_64 a(5), b(5), c(6);
  const UserGeometry ga = generate_user_geometry(cfg, a);
  const UserGeometry gb = generate_user_geometry(cfg, b);
  const UserGeometry gc = generate_user_geometry(cfg, c);
  CHECK(geometry_hash(ga) == geometry_hash(gb));
  CHECK(geometry_hash(ga) != geometry_hash(gc));
}

TEST_CASE("config invariants are enforced") {
  SystemConfig cfg;
  cfg.K = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SystemConfig{};
  cfg.epsilon = 7.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SystemConfig{};
  cfg.d_min = 400.0;  // >= D/2
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
