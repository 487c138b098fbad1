#pragma once

#include <string>

namespace discord_dyn {

// All frequencies and rates are expressed in units of the qubit transition
// frequency, so omega_a == 1 throughout.
inline constexpr double kOmegaA = 1.0;

// Power-law reservoir spectrum with an exponential cutoff,
//   J(w) = coupling_sq * cutoff^(1-exponent) * w^exponent * exp(-w/cutoff).
// exponent < 1 is sub-ohmic, == 1 ohmic, > 1 super-ohmic.
struct SpectralParams {
  double coupling_sq = 0.01;  // alpha^2
  double cutoff = 1.0;        // omega_c
  double exponent = 1.0;      // s

  static SpectralParams sub_ohmic(double coupling_sq, double cutoff);    // s = 1/2
  static SpectralParams ohmic(double coupling_sq, double cutoff);        // s = 1
  static SpectralParams super_ohmic(double coupling_sq, double cutoff);  // s = 3

  void validate() const;  // throws ValidationError
};

// Temperature enters only through the two limits of the occupation factor
// 1 + 2N(w): exactly 1 at T = 0, and 2*kT/w in the high-temperature limit.
class TemperatureRegime {
 public:
  static TemperatureRegime zero();
  static TemperatureRegime high(double kT);

  bool is_zero() const { return zero_; }
  double kT() const { return kT_; }
  std::string label() const;

  bool operator==(const TemperatureRegime&) const = default;

 private:
  TemperatureRegime(bool zero, double kT) : zero_(zero), kT_(kT) {}
  bool zero_ = true;
  double kT_ = 0.0;
};

// J(omega). Throws std::domain_error for omega < 0.
double spectral_density(double omega, const SpectralParams& params);

// The occupation factor 1 + 2N(omega) in the configured limit.
// Throws std::domain_error for omega <= 0 in the high-temperature regime.
double thermal_factor(double omega, const TemperatureRegime& regime);

}  // namespace discord_dyn
