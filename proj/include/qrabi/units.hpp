#pragma once

#include <stdexcept>

namespace qrabi {

// CODATA 2018 values. k_B is exact in the 2019 SI; hbar is the shorthand
// h/2pi with h exact.
inline constexpr double kBoltzmannJPerK = 1.380649e-23;
inline constexpr double kHBarJs = 1.054571817e-34;

// Dimensionless temperature tau = k_B T / (hbar * omega) for a reference
// angular frequency omega = 2*pi*f. 19 mK at f = 8 GHz gives tau ~ 0.04949.
inline double tau_from_mk_ghz(double temperature_mk, double frequency_ghz) {
  if (frequency_ghz <= 0.0) throw std::invalid_argument("frequency_ghz must be > 0");
  if (temperature_mk < 0.0) throw std::invalid_argument("temperature_mk must be >= 0");
  const double t_kelvin = temperature_mk * 1e-3;
  const double omega = 2.0 * 3.14159265358979323846 * frequency_ghz * 1e9;
  return kBoltzmannJPerK * t_kelvin / (kHBarJs * omega);
}

}  // namespace qrabi
