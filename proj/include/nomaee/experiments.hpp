#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomaee/allocator.hpp"
#include "nomaee/channel.hpp"
#include "nomaee/config.hpp"
#include "nomaee/geometry.hpp"
#include "nomaee/link_metrics.hpp"

namespace nomaee {

/// Outcome of one allocator on one geometry. ee is recomputed from the plain
/// (non-high-SINR) bound rates at the final powers so all three allocators
/// are compared on the same metric; ee_objective is the solver's own
/// high-SINR objective value (the converged q for the iterative allocators).
struct AllocatorOutcome {
  double ee = 0.0;            // bit/J, bound rates
  double ee_objective = 0.0;  // bit/J, high-SINR bound objective
  double tx_power = 0.0;      // W, sum of transmit powers
  int iterations = 0;
  bool converged = false;
  bool feasible = false;
  int low_sinr_users = 0;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<double> distances;
  double alpha = 0.0;
  std::uint64_t geometry_hash = 0;
  bool floors_feasible = true;  // analytic feasibility of the rate floors under the zone caps
  AllocatorOutcome proposed;
  AllocatorOutcome baseline;
  AllocatorOutcome equal;
  // Monte-Carlo diagnostic from one channel draw at the proposed allocation
  std::optional<double> ee_exact_proposed;  // bit/J
  // q-trace of the proposed run, for convergence diagnostics
  std::vector<double> q_trace;
};

/// Analytic feasibility of the rate floors under the zone caps. The floor
/// r~_k/B >= R_T is linear in p: p_k >= c (sum p + a_k) with
/// c = 2^R_T / (M + 2^R_T) and a_k = B N0 / beta_k. The componentwise-minimal
/// solution exists iff c K < 1, and the floors fit iff it satisfies the caps.
inline bool rate_floors_feasible(const UserGeometry& geom, const SystemConfig& cfg,
                                 const ZonePartition& zones) {
  const int K = geom.users();
  const double c = std::pow(2.0, cfg.R_T) / (cfg.M + std::pow(2.0, cfg.R_T));
  if (!(c * K < 1.0)) return false;
  double sum_a = 0.0;
  std::vector<double> a(K);
  for (int k = 0; k < K; ++k) {
    a[k] = cfg.noise_power() / geom.betas[k];
    sum_a += a[k];
  }
  const double total = c * sum_a / (1.0 - c * K);  // minimal total power
  if (total > cfg.P_T) return false;
  double near_need = 0.0, far_need = 0.0;
  for (int k = 0; k < K; ++k) {
    const double pk = c * (total + a[k]);
    if (zones.is_near(k))
      near_need += pk;
    else
      far_need += pk;
  }
  return near_need <= zones.alpha * cfg.P_T + 1e-12 &&
         far_need <= (1.0 - zones.alpha) * cfg.P_T + 1e-12;
}

inline AllocatorOutcome summarize_outcome(const AllocationResult& r, const SystemConfig& cfg) {
  AllocatorOutcome o;
  o.ee_objective = r.ee;
  for (double x : r.p) o.tx_power += x;
  o.ee = r.rates_bound.sum() / (cfg.circuit_power() + o.tx_power);
  o.iterations = r.iterations;
  o.converged = r.converged;
  o.feasible = r.feasible;
  o.low_sinr_users = r.low_sinr_users;
  return o;
}

/// One matched-seed trial: a single geometry draw, all three allocators run
/// on the identical geometry. Never throws on allocator infeasibility; the
/// flags carry it.
inline TrialResult run_trial(const SystemConfig& cfg, std::uint64_t seed,
                             bool with_exact_diagnostics = false) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  const UserGeometry geom = generate_user_geometry(cfg, rng);

  TrialResult t;
  t.seed = seed;
  t.distances = geom.distances;
  t.geometry_hash = geometry_hash(geom);
  const ZonePartition zones = partition_zones(geom, cfg);
  t.alpha = zones.alpha;
  t.floors_feasible = rate_floors_feasible(geom, cfg, zones);

  const AllocationResult rp = solve(geom, cfg);
  const AllocationResult rb = solve_baseline_single_zone(geom, cfg);
  const AllocationResult re = equal_power_allocation(geom, cfg);
  t.proposed = summarize_outcome(rp, cfg);
  t.baseline = summarize_outcome(rb, cfg);
  t.equal = summarize_outcome(re, cfg);
  t.q_trace.reserve(rp.trace.size());
  for (const TracePoint& tp : rp.trace) t.q_trace.push_back(tp.q);

  if (with_exact_diagnostics) {
    const ChannelRealization ch = draw_channel(cfg, geom, rng);
    RateVector exact;
    exact.kind = RateKind::exact;
    exact.rates.resize(cfg.K);
    for (int k = 0; k < cfg.K; ++k)
      exact.rates[k] = rate_from_sinr(sinr_exact(k, rp.p, ch, cfg), cfg.B);
    t.ee_exact_proposed = energy_efficiency(exact, rp.p, cfg).ee;
  }
  return t;
}

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

inline Summary aggregate(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate: empty list");
  Summary s;
  s.count = values.size();
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    s.mean += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean /= static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.ci95 = 1.96 * s.sd / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

enum class SweepAxis { Pc, M, Pt, Rt };

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Pc: return "pc";
    case SweepAxis::M: return "m";
    case SweepAxis::Pt: return "pt";
    case SweepAxis::Rt: return "rt";
  }
  return "?";
}

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "pc") return SweepAxis::Pc;
  if (s == "m") return SweepAxis::M;
  if (s == "pt") return SweepAxis::Pt;
  if (s == "rt") return SweepAxis::Rt;
  throw std::invalid_argument("unknown sweep axis: " + s + " (expected pc|m|pt|rt)");
}

/// Axis values are given in the axis' natural unit:
/// pc in dBm, m as an antenna count, pt in W, rt in bit/s/Hz.
inline SystemConfig apply_axis_value(SystemConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Pc:
      cfg.P_c = dbm_to_watt(value);
      break;
    case SweepAxis::M:
      cfg.M = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::Pt:
      cfg.P_T = value;
      break;
    case SweepAxis::Rt:
      cfg.R_T = value;
      break;
  }
  cfg.validate();
  return cfg;
}

struct SweepRow {
  double axis_value = 0.0;
  double ee_proposed_mean = 0.0;   // bit/J
  double ee_proposed_ci95 = 0.0;
  double ee_baseline_mean = 0.0;
  double ee_baseline_ci95 = 0.0;
  double ee_equal_mean = 0.0;
  double improvement_mean = 0.0;   // bit/J, proposed - baseline per matched trial
  double tx_power_mean_w = 0.0;    // W, proposed allocator
  double converged_fraction = 0.0; // proposed allocator
  int trials = 0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Pt;
  std::vector<SweepRow> rows;
};

/// Matched-seed sweep: trial t uses seed cfg.seed + t at every axis value, so
/// per-value aggregates share the identical geometry set.
inline SweepResult sweep(const SystemConfig& base_cfg, SweepAxis axis,
                         const std::vector<double>& values, int trials) {
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (values.empty()) throw std::invalid_argument("sweep: no axis values");
  SweepResult out;
  out.axis = axis;
  for (double v : values) {
    const SystemConfig cfg = apply_axis_value(base_cfg, axis, v);
    std::vector<double> ee_p, ee_b, ee_e, imp, txp;
    int converged = 0;
    for (int t = 0; t < trials; ++t) {
      const TrialResult tr = run_trial(cfg, cfg.seed + static_cast<std::uint64_t>(t));
      ee_p.push_back(tr.proposed.ee);
      ee_b.push_back(tr.baseline.ee);
      ee_e.push_back(tr.equal.ee);
      imp.push_back(tr.proposed.ee - tr.baseline.ee);
      txp.push_back(tr.proposed.tx_power);
      if (tr.proposed.converged) ++converged;
    }
    SweepRow row;
    row.axis_value = v;
    const Summary sp = aggregate(ee_p);
    const Summary sb = aggregate(ee_b);
    row.ee_proposed_mean = sp.mean;
    row.ee_proposed_ci95 = sp.ci95;
    row.ee_baseline_mean = sb.mean;
    row.ee_baseline_ci95 = sb.ci95;
    row.ee_equal_mean = aggregate(ee_e).mean;
    row.improvement_mean = aggregate(imp).mean;
    row.tx_power_mean_w = aggregate(txp).mean;
    row.converged_fraction = static_cast<double>(converged) / trials;
    row.trials = trials;
    out.rows.push_back(row);
  }
  return out;
}

struct OracleResult {
  std::vector<double> p;
  double ee = -std::numeric_limits<double>::infinity();  // bit/J, high-SINR objective
  bool feasible_point_found = false;
};

/// Exhaustive grid search over per-user powers p_k in {res*cap, 2*res*cap, ...,
/// cap} of the user's zone cap, subject to zone sums and the rate floors,
/// maximizing the same high-SINR bound EE the solver targets. K <= 4.
inline OracleResult brute_force_oracle(const UserGeometry& geom, const SystemConfig& cfg,
                                       double resolution) {
  cfg.validate();
  const int K = geom.users();
  if (K > 4) throw std::invalid_argument("brute_force_oracle: K must be <= 4");
  if (!(resolution > 0.0 && resolution <= 0.1))
    throw std::invalid_argument("brute_force_oracle: resolution must be in (0, 0.1]");

  const ZonePartition zones = partition_zones(geom, cfg);
  const double caps[2] = {zones.alpha * cfg.P_T, (1.0 - zones.alpha) * cfg.P_T};
  std::vector<int> zone_of(K);
  for (int k = 0; k < K; ++k) zone_of[k] = zones.is_near(k) ? 0 : 1;

  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  std::vector<std::vector<double>> grid(K);
  for (int k = 0; k < K; ++k) {
    grid[k].resize(steps);
    for (int i = 0; i < steps; ++i)
      grid[k][i] = (i + 1) * resolution * caps[zone_of[k]];
  }

  std::vector<double> a(K);
  for (int k = 0; k < K; ++k) a[k] = cfg.noise_power() / geom.betas[k];
  const double mp_c = cfg.circuit_power();
  const double rt_l2 = cfg.R_T;  // floor in bit/s/Hz

  OracleResult best;
  std::vector<int> idx(K, 0);
  std::vector<double> p(K);
  while (true) {
    for (int k = 0; k < K; ++k) p[k] = grid[k][idx[k]];
    double total = 0.0, zsum[2] = {0.0, 0.0};
    for (int k = 0; k < K; ++k) {
      total += p[k];
      zsum[zone_of[k]] += p[k];
    }
    if (zsum[0] <= caps[0] + 1e-12 && zsum[1] <= caps[1] + 1e-12) {
      double sum_se = 0.0;
      bool ok = true;
      for (int k = 0; k < K; ++k) {
        const double se = std::log2(cfg.M * p[k] / (total - p[k] + a[k]));
        if (se < rt_l2) {
          ok = false;
          break;
        }
        sum_se += se;
      }
      if (ok) {
        const double ee = cfg.B * sum_se / (total + mp_c);
        if (ee > best.ee) {
          best.ee = ee;
          best.p = p;
          best.feasible_point_found = true;
        }
      }
    }
    int d = K - 1;
    while (d >= 0 && ++idx[d] == steps) idx[d--] = 0;
    if (d < 0) break;
  }
  return best;
}

}  // namespace nomaee
