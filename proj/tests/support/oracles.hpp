#pragma once

// Test-side reference implementations. Nothing here calls the library's
// Pauli algebra, Jordan-Wigner mapping or excitation kernels: fermionic
// operators act on occupation bitstrings directly, Pauli strings become
// Kronecker products of 2x2 matrices, and exponentials come from Eigen.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spinvqe/integrals.hpp"
#include "spinvqe/pauli.hpp"
#include "spinvqe/statevector.hpp"

namespace oracle {

using cplx = std::complex<double>;

struct Op {
  std::size_t mode;
  bool dagger;
};

/// Applies ops right to left (operator order) to |b>. Sign of a ladder
/// operator on mode j is (-1)^(occupied modes below j).
std::optional<std::pair<double, std::uint64_t>> apply_ops(const std::vector<Op>& ops, std::uint64_t b);

/// Dense matrix of the operator string on n qubits.
Eigen::MatrixXd ops_matrix(const std::vector<Op>& ops, std::size_t n);

/// sum h_pq E_pq + 1/2 sum g_pqrs e_pqrs + core on the full 2^(2M) space,
/// spin-orbital p sigma at bit 2p + sigma.
Eigen::MatrixXd ci_matrix(const spinvqe::ActiveSpaceIntegrals& ints);

/// Dense 2^n matrix of a PauliSum via Kronecker products.
Eigen::MatrixXcd pauli_matrix(const spinvqe::PauliSum& sum);

/// Dense exp(M) via Eigen's matrix exponential.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

/// Random symmetric h and a positive semidefinite g with 8-fold symmetry.
spinvqe::ActiveSpaceIntegrals random_integrals(std::size_t m, int n_alpha, int n_beta, std::mt19937_64& rng,
                                               double core = 0.0);

spinvqe::StateVector random_state(std::size_t n, std::mt19937_64& rng);

/// Random normalized state supported on one (N, 2 S_z) sector.
spinvqe::StateVector random_sector_state(std::size_t n, int n_electrons, int two_sz, std::mt19937_64& rng);

Eigen::VectorXcd to_eigen(const spinvqe::StateVector& psi);

std::string data_path(const std::string& name);

/// Indices of the 2^n basis with the given electron count and 2 S_z.
std::vector<Eigen::Index> sector_indices(std::size_t n, int n_electrons, int two_sz);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace oracle
