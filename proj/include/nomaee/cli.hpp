#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nomaee/config_io.hpp"
#include "nomaee/experiments.hpp"
#include "nomaee/output.hpp"

namespace nomaee {

enum class Command { Simulate, Sweep, OracleCheck };
enum class OutputFormat { Csv, Json };

/// A fully-parsed invocation. Overrides compose left to right on top of the
/// config file; the last assignment wins.
struct RunSpec {
  Command command = Command::Simulate;
  std::string config_path;              // empty: all defaults
  std::string out_path;                 // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::uint64_t> seed;    // overrides config seed
  int trials = 500;
  SweepAxis axis = SweepAxis::Pt;
  std::vector<double> axis_values;
  std::vector<std::string> overrides;   // key=value, applied in order
  double oracle_resolution = 0.005;
};

namespace detail {

inline SystemConfig resolve_config(const RunSpec& spec) {
  SystemConfig cfg;
  if (!spec.config_path.empty()) {
    std::ifstream in(spec.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + spec.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = parse_config(ss.str());
  }
  for (const std::string& ov : spec.overrides) apply_override(cfg, ov);
  if (spec.seed) cfg.seed = *spec.seed;
  cfg.validate();
  return cfg;
}

inline void write_output(const RunSpec& spec, const std::string& payload) {
  if (spec.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(spec.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + spec.out_path);
  out << payload;
  if (!out) throw std::runtime_error("write failed: " + spec.out_path);
}

}  // namespace detail

/// Executes a parsed invocation. Returns 0 on success, nonzero on config or
/// I/O errors and when every trial of a batch is infeasible.
inline int run(const RunSpec& spec, std::ostream& diag = std::cerr) {
  SystemConfig cfg;
  try {
    cfg = detail::resolve_config(spec);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    switch (spec.command) {
      case Command::Simulate: {
        std::vector<TrialResult> trials;
        trials.reserve(spec.trials);
        int feasible = 0;
        for (int t = 0; t < spec.trials; ++t) {
          trials.push_back(run_trial(cfg, cfg.seed + static_cast<std::uint64_t>(t), true));
          if (trials.back().proposed.feasible) ++feasible;
        }
        if (feasible == 0) {
          diag << "error: all " << spec.trials << " trials infeasible under the configured rate "
               << "floors and power caps\n";
          return 3;
        }
        detail::write_output(spec, spec.format == OutputFormat::Csv
                                       ? simulate_csv(trials)
                                       : simulate_json(cfg, trials));
        return 0;
      }
      case Command::Sweep: {
        std::vector<double> values = spec.axis_values;
        if (values.empty()) {
          switch (spec.axis) {  // default grids, one per sweep axis
            case SweepAxis::Pc: values = {0, 2, 4, 6, 8, 10, 12, 14}; break;
            case SweepAxis::M: values = {32, 64, 96, 128}; break;
            case SweepAxis::Pt: values = {1, 2, 3, 4}; break;
            case SweepAxis::Rt: values = {3, 4, 5, 6}; break;
          }
        }
        const SweepResult r = sweep(cfg, spec.axis, values, spec.trials);
        bool any_converged = false;
        for (const SweepRow& row : r.rows) any_converged |= row.converged_fraction > 0.0;
        if (!any_converged) {
          diag << "error: no trial converged at any axis value\n";
          return 3;
        }
        detail::write_output(spec, spec.format == OutputFormat::Csv ? sweep_csv(r)
                                                                    : sweep_json(cfg, r));
        return 0;
      }
      case Command::OracleCheck: {
        std::vector<OracleCheckRow> rows;
        for (int t = 0; t < spec.trials; ++t) {
          const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t);
          std::mt19937_64 rng(seed);
          const UserGeometry geom = generate_user_geometry(cfg, rng);
          const AllocationResult sol = solve(geom, cfg);
          const OracleResult oracle = brute_force_oracle(geom, cfg, spec.oracle_resolution);
          OracleCheckRow row;
          row.seed = seed;
          row.ee_solver = sol.ee;
          row.solver_converged = sol.converged;
          if (oracle.feasible_point_found) {
            row.ee_oracle = oracle.ee;
            row.gap = (sol.ee - oracle.ee) / oracle.ee;
          } else {
            row.ee_oracle = 0.0;
            row.gap = 0.0;
          }
          rows.push_back(row);
        }
        detail::write_output(spec, spec.format == OutputFormat::Csv ? oracle_csv(rows)
                                                                    : oracle_json(cfg, rows));
        return 0;
      }
    }
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace nomaee
