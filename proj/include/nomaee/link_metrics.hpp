#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "nomaee/channel.hpp"
#include "nomaee/config.hpp"
#include "nomaee/geometry.hpp"

namespace nomaee {

enum class RateKind { exact, bound, bound_high_sinr };

/// Per-user rates in bit/s. Entries of kind bound_high_sinr may be negative
/// when the SINR argument drops below 1 (low-SINR regime).
struct RateVector {
  std::vector<double> rates;
  RateKind kind = RateKind::bound;

  double sum() const {
    double s = 0.0;
    for (double r : rates) s += r;
    return s;
  }
};

struct EEReport {
  double ee = 0.0;           // bit/J
  double sum_rate = 0.0;     // bit/s
  double total_power = 0.0;  // W, transmit + circuit
};

/// Exact SINR at user k for one channel realization:
/// p_k |g_k^H v_k|^2 / (sum_{j != k} p_j |g_k^H v_j|^2 + B N0).
inline double sinr_exact(int k, std::span<const double> p, const ChannelRealization& ch,
                         const SystemConfig& cfg) {
  const int K = static_cast<int>(p.size());
  double signal = 0.0, interference = 0.0;
  for (int j = 0; j < K; ++j) {
    const double coupling = std::norm(ch.G.col(k).dot(ch.V.col(j)));
    if (j == k)
      signal = p[k] * coupling;
    else
      interference += p[j] * coupling;
  }
  return signal / (interference + cfg.noise_power());
}

inline double rate_from_sinr(double sinr, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

/// SINR argument of the large-M lower bound: M beta_k p_k / (beta_k sum_{j!=k} p_j + B N0).
/// Uses only large-scale gains; no channel draw involved.
inline double sinr_bound_argument(int k, std::span<const double> p, const UserGeometry& geom,
                                  const SystemConfig& cfg) {
  double others = 0.0;
  for (int j = 0; j < static_cast<int>(p.size()); ++j)
    if (j != k) others += p[j];
  return cfg.M * geom.betas[k] * p[k] / (geom.betas[k] * others + cfg.noise_power());
}

/// Large-M lower bound on the rate, B log2(1 + x).
inline double rate_bound(int k, std::span<const double> p, const UserGeometry& geom,
                         const SystemConfig& cfg) {
  return cfg.B * std::log2(1.0 + sinr_bound_argument(k, p, geom, cfg));
}

/// High-SINR form of the bound, B log2(x); below rate_bound everywhere and
/// negative once x < 1.
inline double rate_bound_high_sinr(int k, std::span<const double> p, const UserGeometry& geom,
                                   const SystemConfig& cfg) {
  if (!(p[k] > 0.0)) throw std::domain_error("rate_bound_high_sinr: p_k must be > 0");
  return cfg.B * std::log2(sinr_bound_argument(k, p, geom, cfg));
}

inline RateVector all_rates_bound(std::span<const double> p, const UserGeometry& geom,
                                  const SystemConfig& cfg) {
  RateVector rv;
  rv.kind = RateKind::bound;
  rv.rates.resize(p.size());
  for (int k = 0; k < static_cast<int>(p.size()); ++k) rv.rates[k] = rate_bound(k, p, geom, cfg);
  return rv;
}

inline RateVector all_rates_bound_high_sinr(std::span<const double> p, const UserGeometry& geom,
                                            const SystemConfig& cfg) {
  RateVector rv;
  rv.kind = RateKind::bound_high_sinr;
  rv.rates.resize(p.size());
  for (int k = 0; k < static_cast<int>(p.size()); ++k)
    rv.rates[k] = rate_bound_high_sinr(k, p, geom, cfg);
  return rv;
}

/// EE = sum of rates / (sum of transmit powers + M P_c).
inline EEReport energy_efficiency(const RateVector& rates, std::span<const double> p,
                                  const SystemConfig& cfg) {
  EEReport rep;
  rep.sum_rate = rates.sum();
  rep.total_power = cfg.circuit_power();
  for (double x : p) rep.total_power += x;
  rep.ee = rep.sum_rate / rep.total_power;
  return rep;
}

/// Dinkelbach subtractive objective, sum r - q (sum p + M P_c). Zero exactly
/// when q equals the EE of (rates, p).
inline double subtractive_objective(const RateVector& rates, std::span<const double> p, double q,
                                    const SystemConfig& cfg) {
  double total_power = cfg.circuit_power();
  for (double x : p) total_power += x;
  return rates.sum() - q * total_power;
}

}  // namespace nomaee
