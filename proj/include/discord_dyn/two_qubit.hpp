#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Matrix16 = Eigen::Matrix<std::complex<double>, 16, 16>;
using Vector16 = Eigen::Matrix<std::complex<double>, 16, 1>;

// Product basis ordering: |ee>, |eg>, |ge>, |gg| -> indices 0..3, with
// |e> = (1,0)^T so that sigma_z|e> = +|e> and sigma_plus = |e><g|.
// Index 0 is the doubly excited state, index 3 the ground state.
Matrix2 sigma_plus();
Matrix2 sigma_minus();
Matrix2 sigma_z();

// Embeds a single-qubit operator on qubit 1 (A (x) I) or qubit 2 (I (x) A).
Matrix4 on_qubit1(const Matrix2& a);
Matrix4 on_qubit2(const Matrix2& a);

// Column-stacking vectorization and its inverse.
Vector16 vectorize(const Matrix4& m);
Matrix4 unvectorize(const Vector16& v);

// Superoperator building blocks on the vectorized state: A rho -> (I (x) A),
// rho B -> (B^T (x) I), A rho B -> (B^T (x) A).
Matrix16 left_mul(const Matrix4& a);
Matrix16 right_mul(const Matrix4& b);
Matrix16 sandwich(const Matrix4& a, const Matrix4& b);

// Exchange of the two qubits, as a 4x4 basis permutation.
Matrix4 swap_gate();

struct DensityMatrixTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
};

// Throws ValidationError if rho is not Hermitian / unit-trace / positive
// within the tolerances.
void validate_density_matrix(const Matrix4& rho, const DensityMatrixTolerances& tol = {});

double hermiticity_defect(const Matrix4& rho);
double trace_error(const Matrix4& rho);
double min_eigenvalue(const Matrix4& rho);
double purity(const Matrix4& rho);

// Partial traces; trace_out_second keeps qubit 1.
Matrix2 trace_out_first(const Matrix4& rho);
Matrix2 trace_out_second(const Matrix4& rho);

// Initial-state presets.
Matrix4 bell_psi_plus_state();       // (|eg> + |ge>)/sqrt(2)
Matrix4 excited_ground_state();      // |eg>
Matrix4 doubly_excited_state();      // |ee>
Matrix4 initial_state_from_name(const std::string& name);  // throws ValidationError

}  // namespace discord_dyn
