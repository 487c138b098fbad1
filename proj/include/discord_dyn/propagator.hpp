#pragma once

#include <vector>

#include "discord_dyn/coeffs.hpp"
#include "discord_dyn/liouville.hpp"
#include "discord_dyn/two_qubit.hpp"

namespace discord_dyn {

// States and per-step diagnostics on a uniform time grid. The discord column
// stays NaN until a correlation pass fills it.
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix4> states;
  std::vector<double> trace_error;
  std::vector<double> min_eigenvalue;
  std::vector<double> purity;
  std::vector<double> discord;

  size_t size() const { return times.size(); }
};

struct PropagatorOptions {
  QuadratureOptions quadrature;
  double trace_tolerance = 1e-6;  // step-instability guard
};

// Classical fixed-step RK4 on the vectorized state, with the Liouvillian
// rebuilt from fresh coefficients at every stage time. Coefficients are
// precomputed on the stage grid (t, t + h/2, t + h) once per run.
Trajectory propagate_numerical(const Matrix4& rho0, ReservoirKind kind,
                               const SpectralParams& params, const TemperatureRegime& regime,
                               double t_end, int n_steps, const PropagatorOptions& opts = {});

// Same integrator, but with injected coefficients; stage_cache must hold the
// 2*n_steps + 1 stage times of the uniform grid it was built for.
Trajectory propagate_with_cache(const Matrix4& rho0, ReservoirKind kind,
                                const CoefficientCache& stage_cache,
                                const PropagatorOptions& opts = {});

// One RK4 step of size h for stage generators at t, t + h/2 and t + h.
Vector16 rk4_step(const Matrix16& l_start, const Matrix16& l_mid, const Matrix16& l_end,
                  const Vector16& v, double h);

// Prefactor handling for the factorized solution of the independent case.
// The element formulas alone do not preserve the trace; the exp(-Gamma) and
// exp(j0 J0) factors restore it and the coherence phases respectively.
enum class PrefactorSwitch { None, GammaOnly, GammaAndJ0 };

// j0 as the literal quadratic integral -2i int k2(k2+m2) dt, or the naive
// reading -i int k2 dt matching the J0 coefficient of the master equation.
enum class J0Formula { Literal, Naive };

struct AnalyticOptions {
  PrefactorSwitch prefactor = PrefactorSwitch::GammaAndJ0;
  J0Formula j0 = J0Formula::Naive;
  QuadratureOptions quadrature;
  double riccati_limit = 1e6;
};

// Factorized solution of the independent-reservoir equation: integrates the
// scalar system k+' = nu+ - nu- k+^2 + nu0 k+, k0' = nu0 - 2 nu- k+,
// k-' = nu- exp(k0) alongside the running integrals, then applies the
// explicit matrix-element map with the configured prefactor. The time grid
// must be uniform and start at 0.
Trajectory solve_independent_analytic(const Matrix4& rho0, const SpectralParams& params,
                                      const TemperatureRegime& regime,
                                      const std::vector<double>& t_grid,
                                      const AnalyticOptions& opts = {});

// Same solver with injected stage coefficients (2*n_steps + 1 stage times).
Trajectory solve_independent_analytic_with_cache(const Matrix4& rho0,
                                                 const CoefficientCache& stage_cache,
                                                 const AnalyticOptions& opts = {});

// Long-time decay-rate scale 2 * [pi/2 * J(omega_a) * (1 + 2N(omega_a))],
// i.e. twice the kappa1 plateau; a sanity oracle for late-time slopes.
double markov_limit_rate(const SpectralParams& params, const TemperatureRegime& regime);

}  // namespace discord_dyn
