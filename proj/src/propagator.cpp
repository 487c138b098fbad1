#include "discord_dyn/propagator.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

namespace {

void record_point(Trajectory& traj, double t, const Matrix4& rho) {
  traj.times.push_back(t);
  traj.states.push_back(rho);
  traj.trace_error.push_back(trace_error(rho));
  traj.min_eigenvalue.push_back(min_eigenvalue(rho));
  traj.purity.push_back(purity(rho));
  traj.discord.push_back(std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

Vector16 rk4_step(const Matrix16& l_start, const Matrix16& l_mid, const Matrix16& l_end,
                  const Vector16& v, double h) {
  const Vector16 f1 = l_start * v;
  const Vector16 f2 = l_mid * (v + 0.5 * h * f1);
  const Vector16 f3 = l_mid * (v + 0.5 * h * f2);
  const Vector16 f4 = l_end * (v + h * f3);
  return v + (h / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
}

Trajectory propagate_numerical(const Matrix4& rho0, ReservoirKind kind,
                               const SpectralParams& params, const TemperatureRegime& regime,
                               double t_end, int n_steps, const PropagatorOptions& opts) {
  if (!(t_end > 0.0)) throw ValidationError("propagate_numerical: t_end must be > 0");
  if (n_steps < 10) throw ValidationError("propagate_numerical: n_steps must be >= 10");
  // Stage grid t_k = k * h/2, covering step starts, midpoints and ends.
  std::vector<double> stage_times(static_cast<size_t>(2 * n_steps) + 1);
  const double h = t_end / n_steps;
  for (size_t i = 0; i < stage_times.size(); ++i) stage_times[i] = 0.5 * h * static_cast<double>(i);
  const CoefficientCache cache = CoefficientCache::compute(stage_times, params, regime, opts.quadrature);
  return propagate_with_cache(rho0, kind, cache, opts);
}

Trajectory propagate_with_cache(const Matrix4& rho0, ReservoirKind kind,
                                const CoefficientCache& stage_cache,
                                const PropagatorOptions& opts) {
  if (stage_cache.size() < 3 || stage_cache.size() % 2 == 0) {
    throw ValidationError("propagate_with_cache: stage cache must hold 2*n_steps + 1 times");
  }
  validate_density_matrix(rho0);
  const int n_steps = static_cast<int>((stage_cache.size() - 1) / 2);

  Trajectory traj;
  traj.times.reserve(static_cast<size_t>(n_steps) + 1);
  record_point(traj, stage_cache.time_at(0), rho0);

  Vector16 v = vectorize(rho0);
  for (int k = 0; k < n_steps; ++k) {
    const double t0 = stage_cache.time_at(static_cast<size_t>(2 * k));
    const double t1 = stage_cache.time_at(static_cast<size_t>(2 * k + 2));
    const double h = t1 - t0;
    const Matrix16 l0 = build_liouvillian(kind, stage_cache.at(static_cast<size_t>(2 * k))).matrix;
    const Matrix16 lm = build_liouvillian(kind, stage_cache.at(static_cast<size_t>(2 * k + 1))).matrix;
    const Matrix16 l1 = build_liouvillian(kind, stage_cache.at(static_cast<size_t>(2 * k + 2))).matrix;
    v = rk4_step(l0, lm, l1, v, h);

    const Matrix4 rho = unvectorize(v);
    const double terr = trace_error(rho);
    if (!(terr <= opts.trace_tolerance)) {
      throw NumericalError("propagate: trace error " + std::to_string(terr) + " at t = " +
                           std::to_string(t1) + " exceeds tolerance; refine the step size");
    }
    record_point(traj, t1, rho);
  }
  return traj;
}

namespace {

struct FactorizationDerivs {
  // State layout: k_plus, k_zero, k_minus, Gamma, int_kappa2, int_k2_k2m2.
  static Eigen::Array<double, 6, 1> eval(const Eigen::Array<double, 6, 1>& y,
                                         const CoefficientSet& c) {
    const double nu0 = -4.0 * c.mu1;
    const double nu_plus = 2.0 * (c.kappa1 - c.mu1);
    const double nu_minus = 2.0 * (c.kappa1 + c.mu1);
    Eigen::Array<double, 6, 1> d;
    d[0] = nu_plus - nu_minus * y[0] * y[0] + nu0 * y[0];
    d[1] = nu0 - 2.0 * nu_minus * y[0];
    d[2] = nu_minus * std::exp(y[1]);
    d[3] = 4.0 * c.kappa1;
    d[4] = c.kappa2;
    d[5] = c.kappa2 * (c.kappa2 + c.mu2);
    return d;
  }
};

Matrix4 apply_element_map(const Matrix4& r0, double kp, double k0, double km) {
  const double e = std::exp(k0);
  const double ei = std::exp(-k0);
  const double eh = std::exp(0.5 * k0);
  const double ehi = std::exp(-0.5 * k0);

  Matrix4 r = Matrix4::Zero();
  const std::complex<double> a = r0(0, 0), b = r0(1, 1), c = r0(2, 2), d = r0(3, 3);
  r(0, 0) = (e + 2.0 * kp * km + ei * kp * kp * km * km) * a +
            (kp + ei * kp * kp * km) * (b + c) + ei * kp * kp * d;
  r(1, 1) = (km + ei * kp * km * km) * a + (1.0 + ei * kp * km) * b + ei * kp * km * c + ei * kp * d;
  r(2, 2) = (km + ei * kp * km * km) * a + ei * kp * km * b + (1.0 + ei * kp * km) * c + ei * kp * d;
  r(3, 3) = ei * (km * km * a + km * (b + c) + d);

  const std::complex<double> coh = eh + ehi * kp * km;
  r(1, 0) = coh * r0(1, 0) + ehi * kp * r0(3, 2);
  r(0, 1) = coh * r0(0, 1) + ehi * kp * r0(2, 3);
  r(2, 0) = coh * r0(2, 0) + ehi * kp * r0(3, 1);
  r(0, 2) = coh * r0(0, 2) + ehi * kp * r0(1, 3);
  r(3, 2) = ehi * km * r0(1, 0) + ehi * r0(3, 2);
  r(2, 3) = ehi * km * r0(0, 1) + ehi * r0(2, 3);
  r(3, 1) = ehi * km * r0(2, 0) + ehi * r0(3, 1);
  r(1, 3) = ehi * km * r0(0, 2) + ehi * r0(1, 3);

  r(0, 3) = r0(0, 3);
  r(1, 2) = r0(1, 2);
  r(2, 1) = r0(2, 1);
  r(3, 0) = r0(3, 0);
  return r;
}

}  // namespace

Trajectory solve_independent_analytic(const Matrix4& rho0, const SpectralParams& params,
                                      const TemperatureRegime& regime,
                                      const std::vector<double>& t_grid,
                                      const AnalyticOptions& opts) {
  if (t_grid.size() < 2) throw ValidationError("solve_independent_analytic: grid too short");
  if (t_grid.front() != 0.0) throw ValidationError("solve_independent_analytic: grid must start at 0");
  const double h = t_grid[1] - t_grid[0];
  for (size_t i = 1; i < t_grid.size(); ++i) {
    if (std::abs(t_grid[i] - t_grid[i - 1] - h) > 1e-9 * std::max(1.0, h)) {
      throw ValidationError("solve_independent_analytic: grid must be uniform");
    }
  }
  const int n_steps = static_cast<int>(t_grid.size()) - 1;
  std::vector<double> stage_times(static_cast<size_t>(2 * n_steps) + 1);
  for (size_t i = 0; i < stage_times.size(); ++i) stage_times[i] = 0.5 * h * static_cast<double>(i);
  const CoefficientCache cache = CoefficientCache::compute(stage_times, params, regime, opts.quadrature);
  return solve_independent_analytic_with_cache(rho0, cache, opts);
}

Trajectory solve_independent_analytic_with_cache(const Matrix4& rho0,
                                                 const CoefficientCache& stage_cache,
                                                 const AnalyticOptions& opts) {
  if (stage_cache.size() < 3 || stage_cache.size() % 2 == 0) {
    throw ValidationError("solve_independent_analytic: stage cache must hold 2*n_steps + 1 times");
  }
  validate_density_matrix(rho0);
  const int n_steps = static_cast<int>((stage_cache.size() - 1) / 2);

  // Eigenvalues of sigma_z^(1) + sigma_z^(2) per basis state; exp(j0 J0)
  // multiplies element (i, j) by exp(j0 (z_i - z_j)).
  const double z[4] = {2.0, 0.0, 0.0, -2.0};

  Trajectory traj;
  record_point(traj, stage_cache.time_at(0), rho0);

  Eigen::Array<double, 6, 1> y = Eigen::Array<double, 6, 1>::Zero();
  for (int k = 0; k < n_steps; ++k) {
    const double t0 = stage_cache.time_at(static_cast<size_t>(2 * k));
    const double t1 = stage_cache.time_at(static_cast<size_t>(2 * k + 2));
    const double h = t1 - t0;
    const CoefficientSet& c0 = stage_cache.at(static_cast<size_t>(2 * k));
    const CoefficientSet& cm = stage_cache.at(static_cast<size_t>(2 * k + 1));
    const CoefficientSet& c1 = stage_cache.at(static_cast<size_t>(2 * k + 2));
    const auto f1 = FactorizationDerivs::eval(y, c0);
    const auto f2 = FactorizationDerivs::eval(y + 0.5 * h * f1, cm);
    const auto f3 = FactorizationDerivs::eval(y + 0.5 * h * f2, cm);
    const auto f4 = FactorizationDerivs::eval(y + h * f3, c1);
    y += (h / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);

    if (!y.isFinite().all() || std::abs(y[0]) > opts.riccati_limit) {
      throw NumericalError("solve_independent_analytic: factorization variables blew up at t = " +
                           std::to_string(t1) + "; outside the weak-coupling validity range");
    }
    if (std::abs(y[1]) > 600.0) {
      throw NumericalError("solve_independent_analytic: exp(k0) left the double range");
    }

    Matrix4 r = apply_element_map(rho0, y[0], y[1], y[2]);
    if (opts.prefactor != PrefactorSwitch::None) {
      const double gamma = y[3];
      std::complex<double> j0(0.0, 0.0);
      if (opts.prefactor == PrefactorSwitch::GammaAndJ0) {
        j0 = (opts.j0 == J0Formula::Naive) ? std::complex<double>(0.0, -y[4])
                                           : std::complex<double>(0.0, -2.0 * y[5]);
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          r(i, j) *= std::exp(-gamma + j0 * (z[i] - z[j]));
        }
      }
    }
    record_point(traj, t1, r);
  }
  return traj;
}

double markov_limit_rate(const SpectralParams& params, const TemperatureRegime& regime) {
  return std::numbers::pi * spectral_density(kOmegaA, params) * thermal_factor(kOmegaA, regime);
}

}  // namespace discord_dyn
