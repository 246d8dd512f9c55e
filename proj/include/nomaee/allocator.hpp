#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "nomaee/config.hpp"
#include "nomaee/geometry.hpp"
#include "nomaee/link_metrics.hpp"

namespace nomaee {

inline constexpr double kLn2 = std::numbers::ln2;

/// Cell division at radius D/2. A boundary user (d == D/2) goes to the far zone.
/// alpha = sum_{near} d^2 / sum_all d^2 is the near zone's share of P_T.
struct ZonePartition {
  std::vector<int> near;
  std::vector<int> far;
  double alpha = 0.0;

  bool is_near(int k) const {
    return std::find(near.begin(), near.end(), k) != near.end();
  }
};

inline ZonePartition partition_zones(const UserGeometry& geom, const SystemConfig& cfg) {
  ZonePartition z;
  double near_d2 = 0.0, all_d2 = 0.0;
  for (int k = 0; k < geom.users(); ++k) {
    const double d2 = geom.distances[k] * geom.distances[k];
    all_d2 += d2;
    if (geom.distances[k] < cfg.D / 2.0) {
      z.near.push_back(k);
      near_d2 += d2;
    } else {
      z.far.push_back(k);
    }
  }
  z.alpha = (all_d2 > 0.0) ? near_d2 / all_d2 : 0.0;
  return z;
}

/// Share of the far zone computed from its own distances; equal to 1 - alpha
/// by algebra, kept as a separate route for verification.
inline double far_zone_share(const UserGeometry& geom, const SystemConfig& cfg) {
  double far_d2 = 0.0, all_d2 = 0.0;
  for (int k = 0; k < geom.users(); ++k) {
    const double d2 = geom.distances[k] * geom.distances[k];
    all_d2 += d2;
    if (!(geom.distances[k] < cfg.D / 2.0)) far_d2 += d2;
  }
  return (all_d2 > 0.0) ? far_d2 / all_d2 : 1.0;
}

struct TracePoint {
  double q = 0.0;          // EE estimate after the iteration (bit/J)
  double objective = 0.0;  // subtractive objective at the pre-update q
  double near_sum = 0.0;   // W
  double far_sum = 0.0;    // W
};

/// Mutable solver state. q is the current EE estimate in bit/J; the power
/// update consumes it scaled to the per-rate slot (see power_update).
struct OptimizerState {
  std::vector<double> p;        // W, entrywise > 0 after initialization
  double omega1 = 0.0;          // near-zone multiplier
  double omega2 = 0.0;          // far-zone multiplier
  std::vector<double> rho;      // rate multipliers
  double q = 0.0;               // EE estimate (bit/J)
  int n = 0;                    // iteration counter
  std::vector<TracePoint> trace;
};

struct AllocationResult {
  std::vector<double> p;       // final powers (W)
  ZonePartition partition;
  double ee = 0.0;             // final q (bit/J), high-SINR bound objective
  RateVector rates_bound;      // plain (non-high-SINR) bound rates at the final p (bit/s)
  int iterations = 0;
  bool converged = false;
  bool feasible = false;       // rate floors met and zone sums within caps
  std::vector<double> zone_slack_w;   // cap - zone sum, per zone of the run
  std::vector<double> rate_slack_se;  // r~_k/B - R_T, per user
  std::vector<double> multipliers;    // final zone multipliers, per zone
  int low_sinr_users = 0;      // users whose converged SINR argument is < 10
  std::vector<TracePoint> trace;
};

/// One synchronous power step for user k, the fixed-point map of the
/// stationarity condition:
///
///   p_k = (1 + rho_k) / ( [ sum_{j != k} (1 + rho_j) /
///            ( (sum_{i != j} p_i + B N0 / beta_j) ln2 ) + q + omega ] ln2 )
///
/// All powers on the right are the previous iterate. `q` and `omega` here are
/// the duals in the per-rate (spectral-efficiency) slot: the solve loop keeps
/// its EE estimate in bit/J and passes q/B, which is what stationarity of the
/// bit/s objective requires.
inline double power_update(int k, std::span<const double> p_prev, std::span<const double> rho,
                           double q, double omega, const UserGeometry& geom,
                           const SystemConfig& cfg) {
  const int K = static_cast<int>(p_prev.size());
  double total = 0.0;
  for (double x : p_prev) total += x;
  double cross = 0.0;
  for (int j = 0; j < K; ++j) {
    if (j == k) continue;
    const double denom_j = (total - p_prev[j] + cfg.noise_power() / geom.betas[j]) * kLn2;
    cross += (1.0 + rho[j]) / denom_j;
  }
  const double denom = (cross + q + omega) * kLn2;
  if (!(denom > 0.0))
    throw std::runtime_error("power_update: non-positive denominator (divergent step sizes)");
  return (1.0 + rho[k]) / denom;
}

/// Projected subgradient steps for the zone and rate multipliers:
///   omega <- max(0, omega - theta1 * (cap - zone sum)/P_T)
///   rho_k <- max(0, rho_k - theta2 * (r~_k/B - R_T))
/// Residuals are normalized (zone slack by P_T, rates in bit/s/Hz) so a single
/// step size works across constraint types.
inline void update_multipliers(OptimizerState& st, const ZonePartition& zones,
                               const UserGeometry& geom, const SystemConfig& cfg) {
  double near_sum = 0.0, far_sum = 0.0;
  for (int k : zones.near) near_sum += st.p[k];
  for (int k : zones.far) far_sum += st.p[k];
  if (!zones.near.empty())
    st.omega1 = std::max(0.0, st.omega1 - cfg.theta1 * (zones.alpha * cfg.P_T - near_sum) / cfg.P_T);
  if (!zones.far.empty())
    st.omega2 = std::max(0.0, st.omega2 -
                                  cfg.theta1 * ((1.0 - zones.alpha) * cfg.P_T - far_sum) / cfg.P_T);
  for (int k = 0; k < static_cast<int>(st.p.size()); ++k) {
    const double rate_residual = rate_bound_high_sinr(k, st.p, geom, cfg) / cfg.B - cfg.R_T;
    st.rho[k] = std::max(0.0, st.rho[k] - cfg.theta2 * rate_residual);
  }
}

/// q <- sum r~_k / (sum p_k + M P_c), high-SINR bound rates, clamped at 0.
inline double update_q(const OptimizerState& st, const UserGeometry& geom,
                       const SystemConfig& cfg) {
  const RateVector r = all_rates_bound_high_sinr(st.p, geom, cfg);
  return std::max(0.0, energy_efficiency(r, st.p, cfg).ee);
}

namespace detail {

/// Zone layout the iteration actually runs with: the two-zone split for the
/// proposed allocator, a single full-budget zone for the baseline.
struct ZoneLayout {
  std::vector<std::vector<int>> members;
  std::vector<double> caps;      // W
  std::vector<int> zone_of;      // user -> zone index
};

inline ZoneLayout two_zone_layout(const ZonePartition& z, const SystemConfig& cfg, int users) {
  ZoneLayout l;
  l.members = {z.near, z.far};
  l.caps = {z.alpha * cfg.P_T, (1.0 - z.alpha) * cfg.P_T};
  l.zone_of.assign(users, 1);
  for (int k : z.near) l.zone_of[k] = 0;
  return l;
}

inline ZoneLayout single_zone_layout(const SystemConfig& cfg, int users) {
  ZoneLayout l;
  l.members.resize(1);
  for (int k = 0; k < users; ++k) l.members[0].push_back(k);
  l.caps = {cfg.P_T};
  l.zone_of.assign(users, 0);
  return l;
}

inline constexpr double kRateSlackTol = 1e-3;   // bit/s/Hz
inline constexpr double kZoneSlackTol = 1e-9;   // W

/// Shared iteration for both allocators. Each pass: synchronous power update,
/// multiplier subgradient steps on the raw update, projection of every zone
/// onto its cap (scale-down), then the Dinkelbach ratio update. Terminates on
/// |F(q)|/sum r <= tau at a rate-feasible iterate, or at max_iters.
inline AllocationResult solve_layout(const UserGeometry& geom, const SystemConfig& cfg,
                                     const ZoneLayout& layout, const ZonePartition& partition) {
  const int K = geom.users();
  const int Z = static_cast<int>(layout.members.size());

  OptimizerState st;
  st.p.assign(K, 0.0);
  st.rho.assign(K, 0.0);
  std::vector<double> omegas(Z, 0.0);
  for (int z = 0; z < Z; ++z)
    for (int k : layout.members[z])
      st.p[k] = layout.caps[z] / static_cast<double>(layout.members[z].size());
  st.q = update_q(st, geom, cfg);

  auto zone_sums = [&](const std::vector<double>& p) {
    std::vector<double> s(Z, 0.0);
    for (int z = 0; z < Z; ++z)
      for (int k : layout.members[z]) s[z] += p[k];
    return s;
  };

  bool converged = false;
  int iter = 0;
  std::vector<double> p_next(K);
  while (iter < cfg.max_iters) {
    ++iter;
    // synchronous (Jacobi) sweep at the per-rate price q/B
    const double q_slot = st.q / cfg.B;
    for (int k = 0; k < K; ++k)
      p_next[k] = power_update(k, st.p, st.rho, q_slot, omegas[layout.zone_of[k]], geom, cfg);

    // zone multiplier step on the raw update, then projection onto the caps
    std::vector<double> sums = zone_sums(p_next);
    for (int z = 0; z < Z; ++z) {
      if (layout.members[z].empty()) continue;  // frozen multiplier, vacuous cap
      omegas[z] = std::max(0.0, omegas[z] - cfg.theta1 * (layout.caps[z] - sums[z]) / cfg.P_T);
      if (sums[z] > layout.caps[z]) {
        const double scale = layout.caps[z] / sums[z];
        for (int k : layout.members[z]) p_next[k] *= scale;
        sums[z] = layout.caps[z];
      }
    }
    st.p = p_next;

    // rate multiplier step at the new powers
    double min_rate_slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
      const double rate_residual = rate_bound_high_sinr(k, st.p, geom, cfg) / cfg.B - cfg.R_T;
      min_rate_slack = std::min(min_rate_slack, rate_residual);
      st.rho[k] = std::max(0.0, st.rho[k] - cfg.theta2 * rate_residual);
    }

    const RateVector r = all_rates_bound_high_sinr(st.p, geom, cfg);
    const double sum_rate = r.sum();
    const double objective = subtractive_objective(r, st.p, st.q, cfg);
    const double q_new = std::max(0.0, energy_efficiency(r, st.p, cfg).ee);

    TracePoint tp;
    tp.q = q_new;
    tp.objective = objective;
    const std::vector<double> s_now = zone_sums(st.p);
    tp.near_sum = s_now.front();
    tp.far_sum = (Z > 1) ? s_now[1] : 0.0;
    st.trace.push_back(tp);

    st.q = q_new;
    st.n = iter;
    if (sum_rate > 0.0 && std::abs(objective) / sum_rate <= cfg.tau &&
        min_rate_slack >= -kRateSlackTol) {
      converged = true;
      break;
    }
  }

  AllocationResult res;
  res.p = st.p;
  res.partition = partition;
  res.ee = st.q;
  res.rates_bound = all_rates_bound(st.p, geom, cfg);
  res.iterations = iter;
  res.converged = converged;
  res.trace = std::move(st.trace);
  res.multipliers = omegas;

  const std::vector<double> sums = zone_sums(st.p);
  res.zone_slack_w.resize(Z);
  for (int z = 0; z < Z; ++z) res.zone_slack_w[z] = layout.caps[z] - sums[z];
  res.rate_slack_se.resize(K);
  bool rate_ok = true;
  for (int k = 0; k < K; ++k) {
    res.rate_slack_se[k] = rate_bound_high_sinr(k, st.p, geom, cfg) / cfg.B - cfg.R_T;
    rate_ok = rate_ok && res.rate_slack_se[k] >= -kRateSlackTol;
    if (sinr_bound_argument(k, st.p, geom, cfg) < 10.0) ++res.low_sinr_users;
  }
  bool caps_ok = true;
  for (int z = 0; z < Z; ++z) caps_ok = caps_ok && res.zone_slack_w[z] >= -kZoneSlackTol;
  res.feasible = rate_ok && caps_ok;
  return res;
}

}  // namespace detail

/// Two-zone allocator: cell division at D/2, per-zone caps alpha P_T and
/// (1-alpha) P_T, full iterative loop.
inline AllocationResult solve(const UserGeometry& geom, const SystemConfig& cfg) {
  cfg.validate();
  if (geom.users() < 1) throw std::invalid_argument("solve: no users");
  const ZonePartition z = partition_zones(geom, cfg);
  return detail::solve_layout(geom, cfg, detail::two_zone_layout(z, cfg, geom.users()), z);
}

/// Single-zone reference: the identical loop with one power constraint
/// sum p <= P_T and one multiplier.
inline AllocationResult solve_baseline_single_zone(const UserGeometry& geom,
                                                   const SystemConfig& cfg) {
  cfg.validate();
  if (geom.users() < 1) throw std::invalid_argument("solve_baseline_single_zone: no users");
  const ZonePartition z = partition_zones(geom, cfg);
  return detail::solve_layout(geom, cfg, detail::single_zone_layout(cfg, geom.users()), z);
}

/// Naive comparison floor: p_k = P_T / K, no iteration; efficiency and rates
/// evaluated with the same bound metrics as the solvers' reports.
inline AllocationResult equal_power_allocation(const UserGeometry& geom, const SystemConfig& cfg) {
  cfg.validate();
  const int K = geom.users();
  if (K < 1) throw std::invalid_argument("equal_power_allocation: no users");
  AllocationResult res;
  res.p.assign(K, cfg.P_T / static_cast<double>(K));
  res.partition = partition_zones(geom, cfg);
  res.rates_bound = all_rates_bound(res.p, geom, cfg);
  const RateVector high = all_rates_bound_high_sinr(res.p, geom, cfg);
  res.ee = energy_efficiency(high, res.p, cfg).ee;
  res.iterations = 0;
  res.converged = true;
  res.rate_slack_se.resize(K);
  bool rate_ok = true;
  for (int k = 0; k < K; ++k) {
    res.rate_slack_se[k] = high.rates[k] / cfg.B - cfg.R_T;
    rate_ok = rate_ok && res.rate_slack_se[k] >= -detail::kRateSlackTol;
    if (sinr_bound_argument(k, res.p, geom, cfg) < 10.0) ++res.low_sinr_users;
  }
  res.zone_slack_w = {0.0};  // budget consumed exactly
  res.multipliers = {0.0};
  res.feasible = rate_ok;
  return res;
}

/// Report of the standard-interference-function axioms for the power update
/// map I(p) at a fixed dual point: positivity I(p) > 0, monotonicity
/// I(p') >= I(p) for p' >= p, and scalability c I(p) > I(c p) for c > 1.
struct SifReport {
  bool positivity = false;
  bool monotonicity = false;
  bool scalability = false;
  bool all() const { return positivity && monotonicity && scalability; }
};

inline SifReport sif_axiom_check(std::span<const double> p, const UserGeometry& geom,
                                 const SystemConfig& cfg, double c, double q_slot,
                                 std::span<const double> rho, double omega) {
  if (!(c > 1.0)) throw std::invalid_argument("sif_axiom_check: scale c must be > 1");
  const int K = static_cast<int>(p.size());
  for (double x : p)
    if (!(x > 0.0)) throw std::invalid_argument("sif_axiom_check: power vector must be > 0");

  std::vector<double> p_up(K), p_scaled(K);
  for (int k = 0; k < K; ++k) {
    p_up[k] = p[k] * (1.0 + 0.5 * (c - 1.0));  // a dominating point p' >= p
    p_scaled[k] = c * p[k];
  }
  SifReport rep;
  rep.positivity = rep.monotonicity = rep.scalability = true;
  for (int k = 0; k < K; ++k) {
    const double base = power_update(k, p, rho, q_slot, omega, geom, cfg);
    const double up = power_update(k, p_up, rho, q_slot, omega, geom, cfg);
    const double scaled = power_update(k, p_scaled, rho, q_slot, omega, geom, cfg);
    rep.positivity = rep.positivity && base > 0.0;
    rep.monotonicity = rep.monotonicity && up >= base;
    rep.scalability = rep.scalability && c * base > scaled;
  }
  return rep;
}

/// Convenience overload with neutral duals.
inline SifReport sif_axiom_check(std::span<const double> p, const UserGeometry& geom,
                                 const SystemConfig& cfg, double c) {
  std::vector<double> rho(p.size(), 0.0);
  return sif_axiom_check(p, geom, cfg, c, 1.0, rho, 0.0);
}

}  // namespace nomaee
