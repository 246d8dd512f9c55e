#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "nomaee/config.hpp"
#include "nomaee/units.hpp"

namespace nomaee {

/// Per-user large-scale state: distance, shadowing draw, large-scale gain.
struct UserGeometry {
  std::vector<double> distances;  // d_k (m)
  std::vector<double> shadow_dB;  // shadowing draws (dB)
  std::vector<double> betas;      // beta_k, linear

  int users() const { return static_cast<int>(distances.size()); }
};

/// Large-scale gain: beta = phi * theta / d^epsilon with theta = 10^(shadow_dB/10).
inline double large_scale_gain(double phi, double shadow_dB, double distance_m, double epsilon) {
  if (!(distance_m > 0.0)) throw std::domain_error("large_scale_gain: distance must be > 0");
  return phi * db_to_linear(shadow_dB) / std::pow(distance_m, epsilon);
}

/// Places K users uniformly in area over the annulus [d_min, D] and draws
/// i.i.d. zero-mean normal shadowing with variance sigma2_dB.
/// Quasi-static: one shadowing draw per user per trial.
inline UserGeometry generate_user_geometry(const SystemConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  UserGeometry g;
  g.distances.resize(cfg.K);
  g.shadow_dB.resize(cfg.K);
  g.betas.resize(cfg.K);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> shadow(0.0, std::sqrt(cfg.sigma2_dB));
  const double lo2 = cfg.d_min * cfg.d_min;
  const double hi2 = cfg.D * cfg.D;
  for (int k = 0; k < cfg.K; ++k) {
    // uniform in area <=> d^2 uniform on [d_min^2, D^2]
    g.distances[k] = std::sqrt(lo2 + unif(rng) * (hi2 - lo2));
    g.shadow_dB[k] = shadow(rng);
    g.betas[k] = large_scale_gain(cfg.phi, g.shadow_dB[k], g.distances[k], cfg.epsilon);
  }
  return g;
}

/// FNV-1a over the raw bytes of distances and shadowing; used to assert that
/// matched-seed allocators saw the identical geometry.
inline std::uint64_t geometry_hash(const UserGeometry& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::vector<double>& v) {
    for (double x : v) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(x));
      std::memcpy(&bits, &x, sizeof(bits));
      for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
  };
  mix(g.distances);
  mix(g.shadow_dB);
  return h;
}

}  // namespace nomaee
