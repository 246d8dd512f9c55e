#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nomaee {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All scalar parameters of a run plus solver controls.
/// Field names match the config-file keys one to one.
/// Power-like quantities are stored in linear units (W, W/Hz); dB values
/// appear only where the field name says so.
struct SystemConfig {
  int M = 128;               // transmit antennas
  int K = 3;                 // users sharing the resource block
  double B = 120e3;          // RB bandwidth (Hz)
  double D = 500.0;          // cell radius (m)
  double N0 = 1e-20;         // noise PSD (W/Hz), -170 dBm/Hz
  double P_T = 1.0;          // total transmit power budget (W)
  double P_c = 0.01;         // circuit power per antenna (W), 10 dBm
  double R_T = 3.0;          // per-user minimum rate (bit/s/Hz)
  double epsilon = 5.0;      // path-loss exponent
  double phi = 1.0;          // carrier/antenna-gain constant
  double sigma2_dB = 10.0;   // shadowing variance (dB^2, i.e. variance of the dB draw)
  double tau = 1e-5;         // relative convergence threshold
  double theta1 = 1e-2;      // zone-multiplier step size
  double theta2 = 1e-2;      // rate-multiplier step size
  int max_iters = 10000;     // iteration cap
  double d_min = 35.0;       // minimum user-BS distance (m)
  std::uint64_t seed = 1;    // RNG seed

  double noise_power() const { return B * N0; }          // W over one RB
  double circuit_power() const { return M * P_c; }       // W, all antennas

  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (M < 1) fail("M must be >= 1");
    if (K < 1) fail("K must be >= 1");
    if (!(B > 0.0)) fail("B must be > 0");
    if (!(D > 0.0)) fail("D must be > 0");
    if (!(N0 > 0.0)) fail("N0 must be > 0");
    if (!(P_T > 0.0)) fail("P_T must be > 0");
    if (P_c < 0.0) fail("P_c must be >= 0");
    if (R_T < 0.0) fail("R_T must be >= 0");
    if (epsilon < 2.0 || epsilon > 6.0) fail("epsilon must be in [2, 6]");
    if (!(d_min > 0.0) || !(d_min < D / 2.0)) fail("d_min must satisfy 0 < d_min < D/2");
    if (!(tau > 0.0)) fail("tau must be > 0");
    if (!(theta1 > 0.0)) fail("theta1 must be > 0");
    if (!(theta2 > 0.0)) fail("theta2 must be > 0");
    if (max_iters < 1) fail("max_iters must be >= 1");
    if (sigma2_dB < 0.0) fail("sigma2_dB must be >= 0");
    if (!(phi > 0.0)) fail("phi must be > 0");
  }
};

}  // namespace nomaee
