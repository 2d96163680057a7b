#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "spinvqe/integrals.hpp"
#include "spinvqe/pauli.hpp"

namespace spinvqe {

/// Spin-orbital layout shared by every module: orbital p alpha is qubit 2p,
/// orbital p beta is qubit 2p+1.
enum class Spin : int { alpha = 0, beta = 1 };

constexpr std::size_t spin_orbital(std::size_t orbital, Spin spin) noexcept {
  return 2 * orbital + static_cast<std::size_t>(spin);
}

/// a_j = Z_0 ... Z_{j-1} (X_j + i Y_j)/2
PauliSum jw_lowering(std::size_t spin_orbital, std::size_t n_qubits);
/// a+_j = Z_0 ... Z_{j-1} (X_j - i Y_j)/2
PauliSum jw_raising(std::size_t spin_orbital, std::size_t n_qubits);

/// One ladder operator in a normal-ordered product.
struct LadderOp {
  std::size_t mode;
  bool dagger;
};

/// Jordan-Wigner image of the operator product ops[0] ops[1] ... (left to right).
PauliSum jw_product(std::span<const LadderOp> ops, std::size_t n_qubits);

/// Qubit image of sum h_pq E_pq + 1/2 sum g_pqrs e_pqrs + core_energy on 2*n_orb qubits.
PauliSum build_qubit_hamiltonian(const ActiveSpaceIntegrals& ints);

struct SpinObservables {
  PauliSum s2;
  PauliSum sz;
  PauliSum number;
};

/// S^2 = S- S+ + Sz (Sz + 1), Sz and N for n_orb spatial orbitals.
SpinObservables build_spin_observables(std::size_t n_orb);

}  // namespace spinvqe
