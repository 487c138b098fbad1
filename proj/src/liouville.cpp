#include "discord_dyn/liouville.hpp"

namespace discord_dyn {

SuperoperatorSet build_superoperators() {
  const Matrix4 sp1 = on_qubit1(sigma_plus());
  const Matrix4 sp2 = on_qubit2(sigma_plus());
  const Matrix4 sm1 = on_qubit1(sigma_minus());
  const Matrix4 sm2 = on_qubit2(sigma_minus());
  const Matrix4 sz_sum = on_qubit1(sigma_z()) + on_qubit2(sigma_z());
  const Matrix4 exchange = sp1 * sm2 + sp2 * sm1;
  const Matrix4 p1 = sp1 * sm1;  // excited projector, qubit 1
  const Matrix4 p2 = sp2 * sm2;

  SuperoperatorSet s;
  s.identity = Matrix16::Identity();
  s.J0 = left_mul(sz_sum) - right_mul(sz_sum);
  s.J1 = left_mul(exchange) + right_mul(exchange);
  s.J2 = left_mul(exchange) - right_mul(exchange);
  s.J_minus = sandwich(sm1, sp2) + sandwich(sm2, sp1);
  s.J_plus = sandwich(sp1, sm2) + sandwich(sp2, sm1);
  s.K_minus = sandwich(sm1, sp1) + sandwich(sm2, sp2);
  s.K_plus = sandwich(sp1, sm1) + sandwich(sp2, sm2);
  s.K0 = 0.5 * (left_mul(p1) + right_mul(p1) - s.identity) +
         0.5 * (left_mul(p2) + right_mul(p2) - s.identity);
  return s;
}

const SuperoperatorSet& superoperators() {
  static const SuperoperatorSet set = build_superoperators();
  return set;
}

Liouvillian liouvillian_independent(const CoefficientSet& c) {
  const SuperoperatorSet& s = superoperators();
  const std::complex<double> i(0.0, 1.0);
  Matrix16 m = -4.0 * c.kappa1 * s.identity - i * c.kappa2 * s.J0 +
               2.0 * (c.kappa1 + c.mu1) * s.K_minus + 2.0 * (c.kappa1 - c.mu1) * s.K_plus -
               4.0 * c.mu1 * s.K0;
  return Liouvillian{m, ReservoirKind::Independent};
}

Liouvillian liouvillian_common(const CoefficientSet& c) {
  const SuperoperatorSet& s = superoperators();
  const std::complex<double> i(0.0, 1.0);
  Matrix16 m = liouvillian_independent(c).matrix - 2.0 * c.kappa1 * s.J1 -
               2.0 * i * c.mu2 * s.J2 + 2.0 * (c.kappa1 + c.mu1) * s.J_minus +
               2.0 * (c.kappa1 - c.mu1) * s.J_plus;
  return Liouvillian{m, ReservoirKind::Common};
}

Liouvillian build_liouvillian(ReservoirKind kind, const CoefficientSet& c) {
  return kind == ReservoirKind::Independent ? liouvillian_independent(c) : liouvillian_common(c);
}

}  // namespace discord_dyn
