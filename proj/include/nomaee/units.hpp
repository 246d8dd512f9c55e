#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nomaee {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
  if (x <= 0.0) throw std::domain_error("linear_to_db: value must be > 0");
  return 10.0 * std::log10(x);
}

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watt_to_dbm(double w) {
  if (w <= 0.0) throw std::domain_error("watt_to_dbm: power must be > 0");
  return 10.0 * std::log10(w) + 30.0;
}

/// Units recognized at the configuration and reporting boundary.
/// All internal computation is in linear SI units (W, W/Hz).
enum class Unit { dBm, Watt, dBmPerHz, WattPerHz, dB, Linear };

inline Unit parse_unit(std::string_view s) {
  if (s == "dBm") return Unit::dBm;
  if (s == "W") return Unit::Watt;
  if (s == "dBm/Hz") return Unit::dBmPerHz;
  if (s == "W/Hz") return Unit::WattPerHz;
  if (s == "dB") return Unit::dB;
  if (s == "linear") return Unit::Linear;
  throw std::invalid_argument("unknown unit: " + std::string(s));
}

inline const char* unit_name(Unit u) {
  switch (u) {
    case Unit::dBm: return "dBm";
    case Unit::Watt: return "W";
    case Unit::dBmPerHz: return "dBm/Hz";
    case Unit::WattPerHz: return "W/Hz";
    case Unit::dB: return "dB";
    case Unit::Linear: return "linear";
  }
  return "?";
}

/// Standard decibel conversions between recognized unit pairs.
/// Identity when from == to; unknown pairs are rejected.
inline double convert_units(double value, Unit from, Unit to) {
  if (from == to) return value;
  if (from == Unit::dBm && to == Unit::Watt) return dbm_to_watt(value);
  if (from == Unit::Watt && to == Unit::dBm) return watt_to_dbm(value);
  if (from == Unit::dBmPerHz && to == Unit::WattPerHz) return dbm_to_watt(value);
  if (from == Unit::WattPerHz && to == Unit::dBmPerHz) return watt_to_dbm(value);
  if (from == Unit::dB && to == Unit::Linear) return db_to_linear(value);
  if (from == Unit::Linear && to == Unit::dB) return linear_to_db(value);
  throw std::invalid_argument(std::string("unsupported unit conversion: ") + unit_name(from) +
                              " -> " + unit_name(to));
}

}  // namespace nomaee
