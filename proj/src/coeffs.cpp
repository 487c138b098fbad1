#include "discord_dyn/coeffs.hpp"

#include <algorithm>
#include <stdexcept>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

namespace {

using Sample4 = Eigen::Array<double, 4, 1>;

Sample4 frequency_integrand(double omega, double t, const SpectralParams& params,
                            const TemperatureRegime& regime) {
  const double j = spectral_density(omega, params);
  const double w = thermal_factor(omega, regime);
  const double x = omega - kOmegaA;
  const double kc = cos_time_integral(x, t);
  const double ks = sin_time_integral(x, t);
  return 0.5 * j * Sample4{w * kc, w * ks, kc, ks};
}

// Seed boundaries between a and b, doubling in width from the cutoff scale so
// no initial panel is wide enough to hide the integrand's support entirely.
void seed_log_spaced(std::vector<QuadPiece<4>>& pieces, double a, double b, double scale,
                     const std::function<Sample4(double)>& f) {
  double lo = a;
  double width = scale;
  while (lo + width < b) {
    pieces.push_back({lo, lo + width, f});
    lo += width;
    width *= 2.0;
  }
  pieces.push_back({lo, b, f});
}

}  // namespace

CoefficientSet coefficients_at(double t, const SpectralParams& params,
                               const TemperatureRegime& regime, const QuadratureOptions& quad) {
  params.validate();
  if (t < 0.0) throw std::domain_error("coefficients_at: t must be >= 0");
  if (t == 0.0) return {};  // empty inner integral

  const double omega_max = std::max(50.0 * params.cutoff, kOmegaA + 200.0 / t);
  auto direct = [&, t](double omega) { return frequency_integrand(omega, t, params, regime); };

  std::vector<QuadPiece<4>> pieces;
  const bool endpoint_singular = !regime.is_zero() && params.exponent < 1.0;
  if (endpoint_singular) {
    // omega = u^2 regularizes the integrable w^(s-1) endpoint on [0, omega_a].
    const double u_max = std::sqrt(kOmegaA);
    pieces.push_back({0.0, u_max, [&, t](double u) -> Sample4 {
                        return 2.0 * u * frequency_integrand(u * u, t, params, regime);
                      }});
  } else if (params.cutoff < kOmegaA) {
    pieces.push_back({0.0, params.cutoff, direct});
    pieces.push_back({params.cutoff, kOmegaA, direct});
  } else {
    pieces.push_back({0.0, kOmegaA, direct});
  }
  seed_log_spaced(pieces, kOmegaA, omega_max, std::min(params.cutoff, omega_max - kOmegaA), direct);

  const Sample4 result = integrate_adaptive<4>(pieces, quad);
  if (!result.isFinite().all()) {
    throw QuadratureError("coefficients_at: integral evaluated to a non-finite value");
  }
  return CoefficientSet{result[0], result[1], result[2], result[3]};
}

std::vector<CoefficientIntegrals> accumulate_integrals(const std::vector<double>& grid,
                                                       const std::vector<CoefficientSet>& values) {
  if (grid.empty()) throw ValidationError("accumulate_integrals: empty time grid");
  if (grid.front() != 0.0) throw ValidationError("accumulate_integrals: grid must start at 0");
  if (grid.size() != values.size()) {
    throw ValidationError("accumulate_integrals: grid/value size mismatch");
  }
  std::vector<CoefficientIntegrals> out(grid.size());
  double k1 = 0.0, k2 = 0.0, m1 = 0.0, m2 = 0.0;
  for (size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    if (!(dt > 0.0)) throw ValidationError("accumulate_integrals: grid must be strictly increasing");
    k1 += 0.5 * dt * (values[i - 1].kappa1 + values[i].kappa1);
    k2 += 0.5 * dt * (values[i - 1].kappa2 + values[i].kappa2);
    m1 += 0.5 * dt * (values[i - 1].mu1 + values[i].mu1);
    m2 += 0.5 * dt * (values[i - 1].mu2 + values[i].mu2);
    out[i] = CoefficientIntegrals{4.0 * k1, k2, m1, m2};
  }
  return out;
}

std::vector<CoefficientIntegrals> accumulate_integrals(const std::vector<double>& grid,
                                                       const SpectralParams& params,
                                                       const TemperatureRegime& regime,
                                                       const QuadratureOptions& quad) {
  std::vector<CoefficientSet> values(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) values[i] = coefficients_at(grid[i], params, regime, quad);
  return accumulate_integrals(grid, values);
}

CoefficientCache CoefficientCache::compute(const std::vector<double>& times,
                                           const SpectralParams& params,
                                           const TemperatureRegime& regime,
                                           const QuadratureOptions& quad) {
  CoefficientCache cache;
  cache.times_ = times;
  cache.values_.resize(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    cache.values_[i] = coefficients_at(times[i], params, regime, quad);
  }
  return cache;
}

CoefficientCache CoefficientCache::from_values(std::vector<double> times,
                                               std::vector<CoefficientSet> values) {
  if (times.size() != values.size()) {
    throw ValidationError("CoefficientCache: times/values size mismatch");
  }
  CoefficientCache cache;
  cache.times_ = std::move(times);
  cache.values_ = std::move(values);
  return cache;
}

}  // namespace discord_dyn
