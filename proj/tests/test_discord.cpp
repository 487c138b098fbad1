#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "discord_dyn/discord.hpp"
#include "discord_dyn/errors.hpp"
#include "oracles.hpp"

using namespace discord_dyn;

namespace {

Matrix4 werner(double p) {
  Eigen::Vector4cd phi;
  phi << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  return p * (phi * phi.adjoint()).eval() + (1.0 - p) * 0.25 * Matrix4::Identity();
}

}  // namespace

TEST_SUITE_BEGIN("discord");

TEST_CASE("entropy reference values") {
  Matrix2 pure = Matrix2::Zero();
  pure(0, 0) = 1.0;
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(Matrix4(0.25 * Matrix4::Identity())) ==
        doctest::Approx(2.0).epsilon(1e-12));
  Matrix4 half = Matrix4::Zero();
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  CHECK(von_neumann_entropy(half) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix4 unphysical = Matrix4::Identity();
  unphysical(0, 0) = -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(unphysical), NumericalError);
  CHECK_THROWS_AS(von_neumann_entropy(Eigen::MatrixXcd::Identity(3, 3)), ValidationError);
}

TEST_CASE("mutual information reference values") {
  CHECK(mutual_information(excited_ground_state()) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(mutual_information(bell_psi_plus_state()) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(mutual_information(Matrix4(0.25 * Matrix4::Identity())) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("measurement basis projectors are a complete orthogonal pair") {
  for (const auto& [theta, phi] : {std::pair{0.3, 1.1}, {2.9, 5.8}, {1.5707, 0.0}}) {
    const MeasurementBasis basis{theta, phi};
    const Matrix2 p0 = basis.projector();
    const Matrix2 p1 = Matrix2::Identity() - p0;
    CHECK((p0 * p0 - p0).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p1 * p1 - p1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p0 + p1 - Matrix2::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("classical correlation reference values") {
  CHECK(classical_correlation(excited_ground_state()).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(classical_correlation(bell_psi_plus_state()).value == doctest::Approx(1.0).epsilon(1e-9));
  const DiscordOptions tiny_grid{8, 30, 2};
  const DiscordOptions bad_qubit{64, 30, 3};
  CHECK_THROWS_AS(classical_correlation(werner(0.5), tiny_grid), ValidationError);
  CHECK_THROWS_AS(classical_correlation(werner(0.5), bad_qubit), ValidationError);
}

TEST_CASE("objective agrees with the literal projected-state construction") {
  std::mt19937 gen(301);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const Matrix4 rho = oracles::random_density_matrix(gen);
    const double theta = std::acos(2.0 * u(gen) - 1.0);
    const double phi = 2.0 * oracles::kPi * u(gen);
    for (const int qubit : {1, 2}) {
      const double literal = oracles::measured_correlation_literal(rho, theta, phi, qubit);
      const double fast = oracles::measured_correlation_fast(rho, theta, phi, qubit);
      CHECK(literal == doctest::Approx(fast).epsilon(1e-10));
    }
  }
}

TEST_CASE("werner state against analytic and sampled oracles") {
  const Matrix4 rho = werner(0.5);
  // closed forms for this family: J = sum (1 +- p)/2 log2(1 +- p),
  // I from eigenvalues {(1+3p)/4, 3 x (1-p)/4}
  const double p = 0.5;
  const double j_exact = 0.5 * (1.0 + p) * std::log2(1.0 + p) + 0.5 * (1.0 - p) * std::log2(1.0 - p);
  CHECK(j_exact == doctest::Approx(0.18872187554086717).epsilon(1e-12));

  const ClassicalCorrelationResult cc = classical_correlation(rho);
  CHECK(cc.value == doctest::Approx(j_exact).epsilon(1e-6));

  const double sampled = oracles::classical_correlation_sampled(rho, 1000000, 992);
  CHECK(std::abs(cc.value - sampled) < 1e-4);

  const DiscordResult q = quantum_discord(rho);
  CHECK(q.mutual_information == doctest::Approx(0.45120505930460134).epsilon(1e-9));
  CHECK(q.discord == doctest::Approx(0.26248318376373419).epsilon(1e-4));
}

TEST_CASE("discord reference values") {
  CHECK(quantum_discord(excited_ground_state()).discord == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(quantum_discord(bell_psi_plus_state()).discord == doctest::Approx(1.0).epsilon(1e-6));

  // classically correlated mixture: measuring in the energy basis is optimal
  Matrix4 classical = Matrix4::Zero();
  classical(0, 0) = 0.5;
  classical(3, 3) = 0.5;
  const DiscordResult q = quantum_discord(classical);
  CHECK(q.mutual_information == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(q.classical_correlation == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(q.discord == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("random product states carry no correlations at all") {
  std::mt19937 gen(303);
  for (int k = 0; k < 10; ++k) {
    const Matrix4 rho = oracles::random_product_state(gen);
    CHECK(mutual_information(rho) < 1e-9);
    const DiscordResult q = quantum_discord(rho);
    CHECK(q.discord >= 0.0);
    CHECK(q.discord < 1e-9);
  }
}

TEST_CASE("classical-quantum states have zero discord when B is measured") {
  std::mt19937 gen(305);
  for (int k = 0; k < 5; ++k) {
    std::uniform_real_distribution<double> u(0.1, 0.9);
    const double w = u(gen);
    Matrix2 rho_a1 = Matrix2::Zero(), rho_a2 = Matrix2::Zero();
    {
      std::normal_distribution<double> n(0.0, 1.0);
      Matrix2 g1, g2;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          g1(i, j) = std::complex<double>(n(gen), n(gen));
          g2(i, j) = std::complex<double>(n(gen), n(gen));
        }
      rho_a1 = g1 * g1.adjoint();
      rho_a1 /= rho_a1.trace().real();
      rho_a2 = g2 * g2.adjoint();
      rho_a2 /= rho_a2.trace().real();
    }
    Matrix2 ee = Matrix2::Zero(), gg = Matrix2::Zero();
    ee(0, 0) = 1.0;
    gg(1, 1) = 1.0;
    const Matrix4 rho = w * Eigen::kroneckerProduct(rho_a1, ee).eval() +
                        (1.0 - w) * Eigen::kroneckerProduct(rho_a2, gg).eval();
    CHECK(quantum_discord(rho).discord < 1e-6);
  }
}

TEST_CASE("local unitaries leave discord unchanged") {
  std::mt19937 gen(307);
  for (int s = 0; s < 5; ++s) {
    const Matrix4 rho = oracles::random_density_matrix(gen);
    const double base = quantum_discord(rho).discord;
    for (int k = 0; k < 4; ++k) {
      const Matrix4 u = Eigen::kroneckerProduct(oracles::random_unitary2(gen),
                                                oracles::random_unitary2(gen));
      const Matrix4 rotated = u * rho * u.adjoint();
      CHECK(std::abs(quantum_discord(rotated).discord - base) < 1e-4);
    }
  }
}

TEST_CASE("doubling the grid never lowers the pre-refinement maximum") {
  std::mt19937 gen(309);
  for (int k = 0; k < 5; ++k) {
    const Matrix4 rho = oracles::random_density_matrix(gen);
    DiscordOptions coarse;
    coarse.grid = 16;
    DiscordOptions fine;
    fine.grid = 32;
    CHECK(classical_correlation(rho, fine).grid_value >=
          classical_correlation(rho, coarse).grid_value - 1e-12);
  }
}

TEST_CASE("discord stays within [0, 2] on random states") {
  std::mt19937 gen(311);
  for (int k = 0; k < 25; ++k) {
    const DiscordResult q = quantum_discord(oracles::random_density_matrix(gen));
    CHECK(q.discord >= 0.0);
    CHECK(q.discord <= 2.0);
    CHECK(q.discord <= q.mutual_information + 1e-9);
    CHECK(q.classical_correlation >= 0.0);
  }
}

TEST_CASE("measured qubit is configurable and matters for one-sided states") {
  // classical on B but with non-commuting conditionals on A: measuring B
  // yields zero discord, measuring A does not
  Matrix2 plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  Matrix2 ee = Matrix2::Zero(), gg = Matrix2::Zero();
  ee(0, 0) = 1.0;
  gg(1, 1) = 1.0;
  const Matrix4 rho = 0.5 * Eigen::kroneckerProduct(plus, ee).eval() +
                      0.5 * Eigen::kroneckerProduct(ee, gg).eval();
  DiscordOptions measure_b;
  DiscordOptions measure_a;
  measure_a.measured_qubit = 1;
  CHECK(quantum_discord(rho, measure_b).discord < 1e-6);
  CHECK(quantum_discord(rho, measure_a).discord > 0.02);
}

TEST_SUITE_END();
