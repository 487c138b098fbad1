#pragma once

#include "discord_dyn/coeffs.hpp"
#include "discord_dyn/two_qubit.hpp"

namespace discord_dyn {

enum class ReservoirKind { Independent, Common };

// 16x16 matrix representations of the master-equation superoperators in the
// vectorized (column-stacked) picture. The K family acts per qubit, the J
// family couples the pair through the shared reservoir. Matrices carry no
// coefficient-owned factors of i; the Liouvillian assembly supplies them.
struct SuperoperatorSet {
  Matrix16 J0;       // commutator with sigma_z^(1) + sigma_z^(2)
  Matrix16 J1;       // anticommutator with the exchange coupling
  Matrix16 J2;       // commutator with the exchange coupling
  Matrix16 J_minus;  // cross-qubit lowering sandwich
  Matrix16 J_plus;   // cross-qubit raising sandwich
  Matrix16 K_minus;  // per-qubit lowering sandwich
  Matrix16 K_plus;   // per-qubit raising sandwich
  Matrix16 K0;       // per-qubit excited-projector anticommutator, shifted by -rho/2 each
  Matrix16 identity;
};

const SuperoperatorSet& superoperators();  // built once, immutable
SuperoperatorSet build_superoperators();

struct Liouvillian {
  Matrix16 matrix;
  ReservoirKind kind;
};

// Generator for two qubits in separate reservoirs:
//   -4 k1 - i k2 J0 + 2(k1+m1) K- + 2(k1-m1) K+ - 4 m1 K0.
Liouvillian liouvillian_independent(const CoefficientSet& c);

// Generator for a shared reservoir: the independent part plus the collective
// terms -2 k1 J1 - 2i m2 J2 + 2(k1+m1) J- + 2(k1-m1) J+.
Liouvillian liouvillian_common(const CoefficientSet& c);

Liouvillian build_liouvillian(ReservoirKind kind, const CoefficientSet& c);

}  // namespace discord_dyn
