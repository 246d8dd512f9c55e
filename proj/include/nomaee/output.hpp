#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "nomaee/config.hpp"
#include "nomaee/experiments.hpp"
#include "nomaee/units.hpp"

namespace nomaee {

/// Fixed-format numeric rendering for CSV: 6 significant digits, C locale,
/// no locale-dependent separators.
inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string csv_int(long long v) { return std::to_string(v); }

inline double to_mbit_per_joule(double bit_per_joule) { return bit_per_joule / 1e6; }

/// Fully-resolved config, all defaults materialized, linear units. Included in
/// every JSON output so result files are self-describing and re-runnable.
inline nlohmann::ordered_json config_to_json(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["M"] = c.M;
  j["K"] = c.K;
  j["B"] = c.B;
  j["D"] = c.D;
  j["N0"] = c.N0;
  j["P_T"] = c.P_T;
  j["P_c"] = c.P_c;
  j["R_T"] = c.R_T;
  j["epsilon"] = c.epsilon;
  j["phi"] = c.phi;
  j["sigma2_dB"] = c.sigma2_dB;
  j["tau"] = c.tau;
  j["theta1"] = c.theta1;
  j["theta2"] = c.theta2;
  j["max_iters"] = c.max_iters;
  j["d_min"] = c.d_min;
  j["seed"] = c.seed;
  return j;
}

// --- simulate -------------------------------------------------------------

/// Human-facing CSV: EE in Mbit/J, transmit power in dBm and W.
inline std::string simulate_csv(const std::vector<TrialResult>& trials) {
  std::string out =
      "trial,seed,alpha,ee_proposed,ee_baseline,ee_equal,improvement,"
      "tx_power_proposed_dbm,tx_power_proposed_w,tx_power_baseline_dbm,iterations_proposed,"
      "iterations_baseline,converged_proposed,converged_baseline,feasible_proposed,"
      "feasible_baseline\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialResult& t = trials[i];
    out += csv_int(static_cast<long long>(i)) + ',' + csv_int(static_cast<long long>(t.seed)) +
           ',' + csv_num(t.alpha) + ',' + csv_num(to_mbit_per_joule(t.proposed.ee)) + ',' +
           csv_num(to_mbit_per_joule(t.baseline.ee)) + ',' +
           csv_num(to_mbit_per_joule(t.equal.ee)) + ',' +
           csv_num(to_mbit_per_joule(t.proposed.ee - t.baseline.ee)) + ',' +
           csv_num(watt_to_dbm(t.proposed.tx_power)) + ',' + csv_num(t.proposed.tx_power) + ',' +
           csv_num(watt_to_dbm(t.baseline.tx_power)) + ',' + csv_int(t.proposed.iterations) +
           ',' + csv_int(t.baseline.iterations) + ',' + csv_int(t.proposed.converged ? 1 : 0) +
           ',' + csv_int(t.baseline.converged ? 1 : 0) + ',' +
           csv_int(t.proposed.feasible ? 1 : 0) + ',' + csv_int(t.baseline.feasible ? 1 : 0) +
           '\n';
  }
  return out;
}

inline nlohmann::ordered_json outcome_to_json(const AllocatorOutcome& o) {
  nlohmann::ordered_json j;
  j["ee_bit_per_joule"] = o.ee;
  j["ee_objective_bit_per_joule"] = o.ee_objective;
  j["tx_power_w"] = o.tx_power;
  j["iterations"] = o.iterations;
  j["converged"] = o.converged;
  j["feasible"] = o.feasible;
  j["low_sinr_users"] = o.low_sinr_users;
  return j;
}

/// JSON keeps EE in bit/J.
inline std::string simulate_json(const SystemConfig& cfg, const std::vector<TrialResult>& trials) {
  nlohmann::ordered_json j;
  j["command"] = "simulate";
  j["config"] = config_to_json(cfg);
  j["trials"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialResult& t = trials[i];
    nlohmann::ordered_json row;
    row["trial"] = i;
    row["seed"] = t.seed;
    row["alpha"] = t.alpha;
    row["distances_m"] = t.distances;
    row["geometry_hash"] = t.geometry_hash;
    row["floors_feasible"] = t.floors_feasible;
    row["proposed"] = outcome_to_json(t.proposed);
    row["baseline"] = outcome_to_json(t.baseline);
    row["equal"] = outcome_to_json(t.equal);
    if (t.ee_exact_proposed) row["ee_exact_proposed_bit_per_joule"] = *t.ee_exact_proposed;
    j["trials"].push_back(row);
  }
  return j.dump(2) + "\n";
}

// --- sweep ----------------------------------------------------------------

inline std::string sweep_csv(const SweepResult& r) {
  std::string out =
      "axis_value,ee_proposed_mean,ee_proposed_ci95,ee_baseline_mean,ee_baseline_ci95,"
      "ee_equal_mean,improvement_mean,power_consumed_dbm_mean,converged_fraction,trials\n";
  for (const SweepRow& row : r.rows) {
    out += csv_num(row.axis_value) + ',' + csv_num(to_mbit_per_joule(row.ee_proposed_mean)) +
           ',' + csv_num(to_mbit_per_joule(row.ee_proposed_ci95)) + ',' +
           csv_num(to_mbit_per_joule(row.ee_baseline_mean)) + ',' +
           csv_num(to_mbit_per_joule(row.ee_baseline_ci95)) + ',' +
           csv_num(to_mbit_per_joule(row.ee_equal_mean)) + ',' +
           csv_num(to_mbit_per_joule(row.improvement_mean)) + ',' +
           csv_num(watt_to_dbm(row.tx_power_mean_w)) + ',' + csv_num(row.converged_fraction) +
           ',' + csv_int(row.trials) + '\n';
  }
  return out;
}

inline std::string sweep_json(const SystemConfig& cfg, const SweepResult& r) {
  nlohmann::ordered_json j;
  j["command"] = "sweep";
  j["axis"] = axis_name(r.axis);
  j["config"] = config_to_json(cfg);
  j["rows"] = nlohmann::ordered_json::array();
  for (const SweepRow& row : r.rows) {
    nlohmann::ordered_json rj;
    rj["axis_value"] = row.axis_value;
    rj["ee_proposed_mean_bit_per_joule"] = row.ee_proposed_mean;
    rj["ee_proposed_ci95_bit_per_joule"] = row.ee_proposed_ci95;
    rj["ee_baseline_mean_bit_per_joule"] = row.ee_baseline_mean;
    rj["ee_baseline_ci95_bit_per_joule"] = row.ee_baseline_ci95;
    rj["ee_equal_mean_bit_per_joule"] = row.ee_equal_mean;
    rj["improvement_mean_bit_per_joule"] = row.improvement_mean;
    rj["power_consumed_mean_w"] = row.tx_power_mean_w;
    rj["power_consumed_mean_dbm"] = watt_to_dbm(row.tx_power_mean_w);
    rj["converged_fraction"] = row.converged_fraction;
    rj["trials"] = row.trials;
    j["rows"].push_back(rj);
  }
  return j.dump(2) + "\n";
}

// --- oracle-check ---------------------------------------------------------

struct OracleCheckRow {
  std::uint64_t seed = 0;
  double ee_solver = 0.0;  // bit/J, solver objective
  double ee_oracle = 0.0;  // bit/J, grid optimum
  double gap = 0.0;        // (solver - oracle) / oracle
  bool solver_converged = false;
};

inline std::string oracle_csv(const std::vector<OracleCheckRow>& rows) {
  std::string out = "trial,seed,ee_solver,ee_oracle,gap_rel,solver_converged,within_1pct\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const OracleCheckRow& r = rows[i];
    out += csv_int(static_cast<long long>(i)) + ',' + csv_int(static_cast<long long>(r.seed)) +
           ',' + csv_num(to_mbit_per_joule(r.ee_solver)) + ',' +
           csv_num(to_mbit_per_joule(r.ee_oracle)) + ',' + csv_num(r.gap) + ',' +
           csv_int(r.solver_converged ? 1 : 0) + ',' +
           csv_int(std::abs(r.gap) <= 0.01 ? 1 : 0) + '\n';
  }
  return out;
}

inline std::string oracle_json(const SystemConfig& cfg, const std::vector<OracleCheckRow>& rows) {
  nlohmann::ordered_json j;
  j["command"] = "oracle-check";
  j["config"] = config_to_json(cfg);
  j["rows"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const OracleCheckRow& r = rows[i];
    nlohmann::ordered_json rj;
    rj["trial"] = i;
    rj["seed"] = r.seed;
    rj["ee_solver_bit_per_joule"] = r.ee_solver;
    rj["ee_oracle_bit_per_joule"] = r.ee_oracle;
    rj["gap_rel"] = r.gap;
    rj["solver_converged"] = r.solver_converged;
    j["rows"].push_back(rj);
  }
  return j.dump(2) + "\n";
}

}  // namespace nomaee
