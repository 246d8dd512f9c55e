#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nomaee/config.hpp"
#include "nomaee/units.hpp"

namespace nomaee {

struct ConfigParseError : std::runtime_error {
  int line;
  ConfigParseError(int line_, const std::string& msg)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_number(std::string_view tok, int line) {
  try {
    std::size_t used = 0;
    const std::string str(tok);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigParseError(line, "malformed numeric value '" + std::string(tok) + "'");
  }
}

/// "value [unit]" -> linear value. `native` is the unit the config stores;
/// `db_unit` is the accepted decibel spelling for the key.
inline double parse_with_unit(std::string_view tok, Unit native, Unit db_unit, int line) {
  const std::size_t sp = tok.find_first_of(" \t");
  if (sp == std::string_view::npos) return parse_number(tok, line);
  const double value = parse_number(trim(tok.substr(0, sp)), line);
  const std::string_view unit_tok = trim(tok.substr(sp + 1));
  Unit u;
  try {
    u = parse_unit(unit_tok);
  } catch (const std::exception&) {
    throw ConfigParseError(line, "unknown unit '" + std::string(unit_tok) + "'");
  }
  if (u == native) return value;
  if (u == db_unit) return convert_units(value, db_unit, native);
  throw ConfigParseError(line, "unit '" + std::string(unit_tok) + "' not valid for this key");
}

inline void assign_key(SystemConfig& cfg, std::string_view key, std::string_view value, int line) {
  if (key == "M")
    cfg.M = static_cast<int>(parse_number(value, line));
  else if (key == "K")
    cfg.K = static_cast<int>(parse_number(value, line));
  else if (key == "B")
    cfg.B = parse_number(value, line);
  else if (key == "D")
    cfg.D = parse_number(value, line);
  else if (key == "N0")
    cfg.N0 = parse_with_unit(value, Unit::WattPerHz, Unit::dBmPerHz, line);
  else if (key == "P_T")
    cfg.P_T = parse_with_unit(value, Unit::Watt, Unit::dBm, line);
  else if (key == "P_c")
    cfg.P_c = parse_with_unit(value, Unit::Watt, Unit::dBm, line);
  else if (key == "R_T")
    cfg.R_T = parse_number(value, line);
  else if (key == "epsilon")
    cfg.epsilon = parse_number(value, line);
  else if (key == "phi")
    cfg.phi = parse_number(value, line);
  else if (key == "sigma2_dB")
    cfg.sigma2_dB = parse_number(value, line);
  else if (key == "tau")
    cfg.tau = parse_number(value, line);
  else if (key == "theta1")
    cfg.theta1 = parse_number(value, line);
  else if (key == "theta2")
    cfg.theta2 = parse_number(value, line);
  else if (key == "max_iters")
    cfg.max_iters = static_cast<int>(parse_number(value, line));
  else if (key == "d_min")
    cfg.d_min = parse_number(value, line);
  else if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(parse_number(value, line));
  else
    throw ConfigParseError(line, "unknown key '" + std::string(key) + "'");
}

}  // namespace detail

/// Flat `key = value` text, `#` comments, unset keys keep their defaults.
/// Power-like keys accept a unit suffix (dBm, W, dBm/Hz, W/Hz) and are stored
/// in linear units. Violated invariants name the offending key.
inline SystemConfig parse_config(std::string_view text) {
  SystemConfig cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigParseError(line_no, "expected 'key = value'");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigParseError(line_no, "expected 'key = value'");
    detail::assign_key(cfg, key, value, line_no);
  }
  cfg.validate();
  return cfg;
}

/// `key=value` override on top of an existing config, same syntax as a
/// config-file line. Invariants are re-checked by the caller once all
/// overrides are applied.
inline void apply_override(SystemConfig& cfg, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("override must be key=value: " + std::string(assignment));
  const std::string_view key = detail::trim(assignment.substr(0, eq));
  const std::string_view value = detail::trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty())
    throw std::invalid_argument("override must be key=value: " + std::string(assignment));
  detail::assign_key(cfg, key, value, 0);
}

}  // namespace nomaee
