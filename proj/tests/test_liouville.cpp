#include <doctest.h>

#include <random>

#include "discord_dyn/liouville.hpp"
#include "oracles.hpp"

using namespace discord_dyn;

namespace {

Vector16 trace_functional() { return vectorize(Matrix4::Identity()); }

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE_BEGIN("liouville");

TEST_CASE("vectorization round trip") {
  std::mt19937 gen(7);
  for (int k = 0; k < 10; ++k) {
    const Matrix4 m = oracles::random_hermitian(gen);
    CHECK(max_abs(unvectorize(vectorize(m)) - m) == 0.0);
  }
}

TEST_CASE("basis convention: index 0 doubly excited, index 3 ground") {
  const Matrix4 n_op = on_qubit1(sigma_plus() * sigma_minus()) + on_qubit2(sigma_plus() * sigma_minus());
  CHECK(n_op(0, 0).real() == 2.0);
  CHECK(n_op(1, 1).real() == 1.0);
  CHECK(n_op(2, 2).real() == 1.0);
  CHECK(n_op(3, 3).real() == 0.0);
}

TEST_CASE("superoperator actions on reference states") {
  const SuperoperatorSet& s = superoperators();

  // commutator with an identity-proportional state vanishes
  const Matrix4 mixed = 0.25 * Matrix4::Identity();
  CHECK(max_abs(unvectorize(s.J0 * vectorize(mixed))) < 1e-15);

  // K- maps |ee><ee| onto |ge><ge| + |eg><eg|
  const Matrix4 from_ee = unvectorize(s.K_minus * vectorize(doubly_excited_state()));
  Matrix4 expected = Matrix4::Zero();
  expected(1, 1) = 1.0;
  expected(2, 2) = 1.0;
  CHECK(max_abs(from_ee - expected) < 1e-15);

  // J2 annihilates diagonal states with equal single-excitation populations
  Matrix4 sym_diag = Matrix4::Zero();
  sym_diag(0, 0) = 0.4;
  sym_diag(1, 1) = 0.2;
  sym_diag(2, 2) = 0.2;
  sym_diag(3, 3) = 0.2;
  CHECK(max_abs(unvectorize(s.J2 * vectorize(sym_diag))) < 1e-15);
}

TEST_CASE("trace functional annihilates J0 and J2") {
  const SuperoperatorSet& s = superoperators();
  const Vector16 tr = trace_functional();
  CHECK((tr.adjoint() * s.J0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((tr.adjoint() * s.J2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("liouvillian with zero coefficients is the zero matrix") {
  CHECK(liouvillian_independent({}).matrix.cwiseAbs().maxCoeff() == 0.0);
  CHECK(liouvillian_common({}).matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kappa1-only independent generator") {
  const SuperoperatorSet& s = superoperators();
  const CoefficientSet c{1.0, 0.0, 0.0, 0.0};
  const Matrix16 l = liouvillian_independent(c).matrix;
  const Matrix16 expected = -4.0 * s.identity + 2.0 * s.K_minus + 2.0 * s.K_plus;
  CHECK((l - expected).cwiseAbs().maxCoeff() == 0.0);
  // unital at this slice: the maximally mixed state is stationary
  CHECK(unvectorize(l * vectorize(Matrix4(0.25 * Matrix4::Identity()))).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("trace preservation for random coefficients, both kinds") {
  std::mt19937 gen(11);
  const Vector16 tr = trace_functional();
  for (int k = 0; k < 50; ++k) {
    const CoefficientSet c = oracles::random_coefficient_set(gen, 2.0);
    CHECK((tr.adjoint() * liouvillian_independent(c).matrix).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((tr.adjoint() * liouvillian_common(c).matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hermiticity preservation on random states") {
  std::mt19937 gen(13);
  for (int k = 0; k < 100; ++k) {
    const CoefficientSet c = oracles::random_coefficient_set(gen, 1.0);
    const Matrix4 rho = oracles::random_hermitian(gen);
    for (const auto kind : {ReservoirKind::Independent, ReservoirKind::Common}) {
      const Matrix4 out = unvectorize(build_liouvillian(kind, c).matrix * vectorize(rho));
      CHECK(max_abs(out - Matrix4(out.adjoint())) < 1e-12);
    }
  }
}

TEST_CASE("qubit-exchange symmetry of both generators") {
  std::mt19937 gen(17);
  const Matrix16 swap_super = sandwich(swap_gate(), swap_gate());
  for (int k = 0; k < 20; ++k) {
    const CoefficientSet c = oracles::random_coefficient_set(gen, 1.0);
    for (const auto kind : {ReservoirKind::Independent, ReservoirKind::Common}) {
      const Matrix16 l = build_liouvillian(kind, c).matrix;
      const Matrix16 conj = swap_super * l * swap_super;
      CHECK((conj - l).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("independent generator keeps the anti-diagonal sector closed") {
  // components rho_14, rho_23, rho_32, rho_41 in column stacking
  const int anti[4] = {12, 9, 6, 3};
  std::mt19937 gen(19);
  for (int k = 0; k < 20; ++k) {
    const CoefficientSet c = oracles::random_coefficient_set(gen, 1.0);
    const Matrix16 l = liouvillian_independent(c).matrix;
    for (const int row : anti) {
      for (int col = 0; col < 16; ++col) {
        if (col == row) continue;
        CHECK(std::abs(l(row, col)) < 1e-14);
      }
    }
    // the corresponding rates follow the scalar law -4 kappa1 -+ 4 i kappa2
    const std::complex<double> i(0.0, 1.0);
    CHECK(std::abs(l(12, 12) - (-4.0 * c.kappa1 - 4.0 * i * c.kappa2)) < 1e-13);
    CHECK(std::abs(l(9, 9) - std::complex<double>(-4.0 * c.kappa1)) < 1e-13);
    CHECK(std::abs(l(6, 6) - std::complex<double>(-4.0 * c.kappa1)) < 1e-13);
    CHECK(std::abs(l(3, 3) - (-4.0 * c.kappa1 + 4.0 * i * c.kappa2)) < 1e-13);
  }
}

TEST_CASE("common minus independent holds exactly the collective terms") {
  std::mt19937 gen(23);
  const SuperoperatorSet& s = superoperators();
  const std::complex<double> i(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const CoefficientSet c = oracles::random_coefficient_set(gen, 1.0);
    const Matrix16 diff = liouvillian_common(c).matrix - liouvillian_independent(c).matrix;
    const Matrix16 expected = -2.0 * c.kappa1 * s.J1 - 2.0 * i * c.mu2 * s.J2 +
                              2.0 * (c.kappa1 + c.mu1) * s.J_minus +
                              2.0 * (c.kappa1 - c.mu1) * s.J_plus;
    CHECK((diff - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_SUITE_END();
