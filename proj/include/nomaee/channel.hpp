#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "nomaee/config.hpp"
#include "nomaee/geometry.hpp"

namespace nomaee {

/// One small-scale realization: H (i.i.d. CN(0,1)), composite G = H diag(sqrt beta),
/// and unit-norm MRT precoders V (column k = g_k / ||g_k||).
struct ChannelRealization {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd G;
  Eigen::MatrixXcd V;
};

/// Matched filter normalized to unit norm. g must be nonzero.
inline Eigen::VectorXcd mrt_precoder(const Eigen::VectorXcd& g) {
  const double n = g.norm();
  if (!(n > 0.0)) throw std::domain_error("mrt_precoder: degenerate (zero) channel vector");
  return g / n;
}

inline ChannelRealization draw_channel(const SystemConfig& cfg, const UserGeometry& geom,
                                       std::mt19937_64& rng) {
  if (geom.users() != cfg.K) throw std::invalid_argument("draw_channel: geometry/config size mismatch");
  ChannelRealization ch;
  ch.H.resize(cfg.M, cfg.K);
  // unit per-entry variance, split equally across real and imaginary parts
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  for (int k = 0; k < cfg.K; ++k)
    for (int m = 0; m < cfg.M; ++m)
      ch.H(m, k) = std::complex<double>(gauss(rng), gauss(rng));
  ch.G.resize(cfg.M, cfg.K);
  ch.V.resize(cfg.M, cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    ch.G.col(k) = ch.H.col(k) * std::sqrt(geom.betas[k]);
    ch.V.col(k) = mrt_precoder(ch.G.col(k));
  }
  return ch;
}

}  // namespace nomaee
