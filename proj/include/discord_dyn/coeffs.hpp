#pragma once

#include <cmath>
#include <vector>

#include "discord_dyn/quadrature.hpp"
#include "discord_dyn/spectral.hpp"

namespace discord_dyn {

// The four time-dependent master-equation coefficients at one instant.
// kappa1/kappa2 carry the occupation factor, mu1/mu2 do not.
struct CoefficientSet {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

// Running time-integrals of the coefficients; Gamma = 4 * int kappa1 dt.
struct CoefficientIntegrals {
  double Gamma = 0.0;
  double int_kappa2 = 0.0;
  double int_mu1 = 0.0;
  double int_mu2 = 0.0;
};

// Closed forms of the inner time integral, with series fallbacks across the
// removable singularity at x = 0 (|x| < 1e-8).
inline double cos_time_integral(double x, double t) {
  if (std::abs(x) < 1e-8) return t - x * x * t * t * t / 6.0;
  return std::sin(x * t) / x;
}

inline double sin_time_integral(double x, double t) {
  if (std::abs(x) < 1e-8) return 0.5 * x * t * t;
  const double s = std::sin(0.5 * x * t);
  return 2.0 * s * s / x;  // 1 - cos(x t), cancellation-free
}

// Evaluates kappa1, kappa2, mu1, mu2 at time t by adaptive quadrature over
// the reservoir frequency, the inner time integral having been done in
// closed form. Exactly zero at t = 0.
CoefficientSet coefficients_at(double t, const SpectralParams& params,
                               const TemperatureRegime& regime,
                               const QuadratureOptions& quad = {});

// Trapezoidal running integrals over a strictly increasing grid starting
// at 0; values[i] are the coefficients at grid[i].
std::vector<CoefficientIntegrals> accumulate_integrals(const std::vector<double>& grid,
                                                       const std::vector<CoefficientSet>& values);

std::vector<CoefficientIntegrals> accumulate_integrals(const std::vector<double>& grid,
                                                       const SpectralParams& params,
                                                       const TemperatureRegime& regime,
                                                       const QuadratureOptions& quad = {});

// Coefficients precomputed on a fixed time grid. One instance per trajectory;
// distinct instances are safe to use concurrently.
class CoefficientCache {
 public:
  static CoefficientCache compute(const std::vector<double>& times, const SpectralParams& params,
                                  const TemperatureRegime& regime,
                                  const QuadratureOptions& quad = {});
  static CoefficientCache from_values(std::vector<double> times, std::vector<CoefficientSet> values);

  size_t size() const { return times_.size(); }
  double time_at(size_t i) const { return times_[i]; }
  const CoefficientSet& at(size_t i) const { return values_[i]; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<CoefficientSet>& values() const { return values_; }

 private:
  std::vector<double> times_;
  std::vector<CoefficientSet> values_;
};

}  // namespace discord_dyn
