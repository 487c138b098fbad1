#include "discord_dyn/two_qubit.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace discord_dyn {

Matrix2 sigma_plus() {
  Matrix2 m = Matrix2::Zero();
  m(0, 1) = 1.0;
  return m;
}

Matrix2 sigma_minus() {
  Matrix2 m = Matrix2::Zero();
  m(1, 0) = 1.0;
  return m;
}

Matrix2 sigma_z() {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix4 on_qubit1(const Matrix2& a) { return Eigen::kroneckerProduct(a, Matrix2::Identity()); }

Matrix4 on_qubit2(const Matrix2& a) { return Eigen::kroneckerProduct(Matrix2::Identity(), a); }

Vector16 vectorize(const Matrix4& m) { return Eigen::Map<const Vector16>(m.data()); }

Matrix4 unvectorize(const Vector16& v) { return Eigen::Map<const Matrix4>(v.data()); }

Matrix16 left_mul(const Matrix4& a) {
  return Eigen::kroneckerProduct(Matrix4::Identity(), a);
}

Matrix16 right_mul(const Matrix4& b) {
  return Eigen::kroneckerProduct(b.transpose(), Matrix4::Identity());
}

Matrix16 sandwich(const Matrix4& a, const Matrix4& b) {
  return Eigen::kroneckerProduct(b.transpose(), a);
}

Matrix4 swap_gate() {
  Matrix4 s = Matrix4::Zero();
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

double hermiticity_defect(const Matrix4& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double trace_error(const Matrix4& rho) { return std::abs(rho.trace() - std::complex<double>(1.0)); }

double min_eigenvalue(const Matrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es;
  es.compute(Matrix4(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double purity(const Matrix4& rho) { return (rho * rho).trace().real(); }

void validate_density_matrix(const Matrix4& rho, const DensityMatrixTolerances& tol) {
  if (hermiticity_defect(rho) > tol.hermiticity) {
    throw ValidationError("density matrix is not Hermitian within tolerance");
  }
  if (trace_error(rho) > tol.trace) {
    throw ValidationError("density matrix trace differs from 1 beyond tolerance");
  }
  if (min_eigenvalue(rho) < tol.min_eigenvalue) {
    throw ValidationError("density matrix has a negative eigenvalue beyond tolerance");
  }
}

Matrix2 trace_out_first(const Matrix4& rho) {
  Matrix2 out = Matrix2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) out(a, b) += rho(2 * k + a, 2 * k + b);
  return out;
}

Matrix2 trace_out_second(const Matrix4& rho) {
  Matrix2 out = Matrix2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += rho(2 * i + k, 2 * j + k);
  return out;
}

Matrix4 bell_psi_plus_state() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = 1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

Matrix4 excited_ground_state() {
  Matrix4 rho = Matrix4::Zero();
  rho(1, 1) = 1.0;
  return rho;
}

Matrix4 doubly_excited_state() {
  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = 1.0;
  return rho;
}

Matrix4 initial_state_from_name(const std::string& name) {
  if (name == "bell_psi_plus") return bell_psi_plus_state();
  if (name == "eg") return excited_ground_state();
  if (name == "ee") return doubly_excited_state();
  throw ValidationError("unknown initial state preset: " + name);
}

}  // namespace discord_dyn
