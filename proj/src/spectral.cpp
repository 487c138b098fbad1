#include "discord_dyn/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

SpectralParams SpectralParams::sub_ohmic(double coupling_sq, double cutoff) {
  return SpectralParams{coupling_sq, cutoff, 0.5};
}

SpectralParams SpectralParams::ohmic(double coupling_sq, double cutoff) {
  return SpectralParams{coupling_sq, cutoff, 1.0};
}

SpectralParams SpectralParams::super_ohmic(double coupling_sq, double cutoff) {
  return SpectralParams{coupling_sq, cutoff, 3.0};
}

void SpectralParams::validate() const {
  if (!(coupling_sq > 0.0)) throw ValidationError("spectral coupling_sq must be > 0");
  if (!(cutoff > 0.0)) throw ValidationError("spectral cutoff must be > 0");
  if (!(exponent > 0.0)) throw ValidationError("spectral exponent must be > 0");
}

TemperatureRegime TemperatureRegime::zero() { return TemperatureRegime(true, 0.0); }

TemperatureRegime TemperatureRegime::high(double kT) {
  if (!(kT > 0.0)) throw ValidationError("high-temperature regime requires kT > 0");
  return TemperatureRegime(false, kT);
}

std::string TemperatureRegime::label() const {
  return zero_ ? "zero" : "high(kT=" + std::to_string(kT_) + ")";
}

double spectral_density(double omega, const SpectralParams& params) {
  if (omega < 0.0) throw std::domain_error("spectral_density: omega must be >= 0");
  if (omega == 0.0) return 0.0;
  return params.coupling_sq * std::pow(params.cutoff, 1.0 - params.exponent) *
         std::pow(omega, params.exponent) * std::exp(-omega / params.cutoff);
}

double thermal_factor(double omega, const TemperatureRegime& regime) {
  if (regime.is_zero()) {
    return 1.0;
  }
  if (omega <= 0.0) throw std::domain_error("thermal_factor: omega must be > 0 at high temperature");
  return 2.0 * regime.kT() / omega;
}

}  // namespace discord_dyn
