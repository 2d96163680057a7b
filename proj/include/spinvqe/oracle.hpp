#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spinvqe/integrals.hpp"
#include "spinvqe/pauli.hpp"

namespace spinvqe {

/// Basis indices with N electrons and 2*S_z = two_sz, ascending.
/// Throws OracleError when the sector is empty.
std::vector<std::uint64_t> sector_basis(std::size_t n_qubits, int n_electrons, int two_sz);

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SectorSpectrum {
  int n_electrons = 0;
  int two_sz = 0;
  std::vector<std::uint64_t> basis;
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Column k belongs to eigenvalues[k]; coefficients over `basis`.
  Eigen::MatrixXd eigenvectors;
  std::vector<double> s2;
};

struct OracleLimits {
  std::size_t dense_qubits = 16;
  /// Sectors larger than this use Lanczos even within the dense qubit cap.
  std::size_t dense_dimension = 6000;
  std::size_t iterative_qubits = 24;
  /// Eigenpairs requested from Lanczos.
  std::size_t iterative_roots = 12;
};

/// Real symmetric matrix of `op` on the given basis. Throws if `op` has a
/// complex element there.
Eigen::MatrixXd restricted_matrix(const PauliSum& op, const std::vector<std::uint64_t>& basis);

/// Spectrum of H in one (N, S_z) sector, with <S^2> per eigenvector. Within
/// degenerate clusters (1e-8) S^2 is diagonalized so levels have definite spin.
SectorSpectrum sector_spectrum(const PauliSum& hamiltonian, int n_electrons, int two_sz,
                               const OracleLimits& limits = {});

/// Lowest energy of spin S among N-electron states (sector S_z = S).
double casci_energy(const ActiveSpaceIntegrals& ints, int n_electrons, int spin, const OracleLimits& limits = {});

/// Lowest eigenpairs of a symmetric matrix given by its action, by Lanczos
/// with full reorthogonalization.
struct LanczosResult {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};
LanczosResult lanczos_lowest(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                             std::size_t dim, std::size_t n_roots, std::size_t max_krylov = 300,
                             double tolerance = 1e-10);

}  // namespace spinvqe
