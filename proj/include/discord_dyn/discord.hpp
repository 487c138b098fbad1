#pragma once

#include <Eigen/Dense>

#include "discord_dyn/propagator.hpp"
#include "discord_dyn/two_qubit.hpp"

namespace discord_dyn {

// Bloch angles of the rank-one projector pair {|v><v|, I - |v><v|} used to
// measure one qubit, with |v> = cos(theta/2)|e> + exp(i phi) sin(theta/2)|g>.
struct MeasurementBasis {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  Eigen::Vector2cd ket() const;
  Matrix2 projector() const;
};

struct DiscordOptions {
  int grid = 64;              // theta resolution; phi uses 2*grid points
  int refine_iterations = 30; // golden-section iterations per coordinate
  int measured_qubit = 2;     // which qubit carries the projectors
};

// -sum lambda log2 lambda over the eigenvalues; eigenvalues below 1e-12
// contribute nothing. Accepts 2x2 or 4x4 states. Throws NumericalError if an
// eigenvalue is below -1e-6 (state too unphysical to score).
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// S(rho_A) + S(rho_B) - S(rho_AB), in bits.
double mutual_information(const Matrix4& rho);

struct ClassicalCorrelationResult {
  double value = 0.0;       // after refinement
  double grid_value = 0.0;  // best grid point before refinement
  MeasurementBasis argmax;
};

// max over projective measurements of S(rho_A) - sum_k p_k S(rho_k), scanned
// on a (theta, phi) grid and refined by coordinate-wise golden-section
// search. Outcomes with p_k < 1e-12 contribute nothing.
ClassicalCorrelationResult classical_correlation(const Matrix4& rho,
                                                 const DiscordOptions& opts = {});

struct DiscordResult {
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  MeasurementBasis argmax_basis;
};

// Mutual information minus the maximal classical correlation, clipped into
// [0, I] when within 1e-9 of either boundary.
DiscordResult quantum_discord(const Matrix4& rho, const DiscordOptions& opts = {});

// Fills the discord diagnostic of every trajectory point.
void fill_discord(Trajectory& traj, const DiscordOptions& opts = {});

}  // namespace discord_dyn
