#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "spinvqe/statevector.hpp"

namespace spinvqe {

/// Occupation probabilities of orbital i over {empty, alpha, beta, double}:
/// (1 - n_a - n_b + n_ab, n_a - n_ab, n_b - n_ab, n_ab).
template <typename Real>
std::array<double, 4> one_orbital_eigenvalues(const BasicStateVector<Real>& psi, std::size_t orbital);

/// -sum w ln w over values clipped into [0, 1]. Values outside
/// [-1e-12, 1 + 1e-12] raise std::domain_error.
double entropy(const std::vector<double>& probabilities);

template <typename Real>
std::vector<double> one_orbital_entropies(const BasicStateVector<Real>& psi);

/// Mean one-orbital entropy divided by ln 4, in [0, 1].
template <typename Real>
double z_s1(const BasicStateVector<Real>& psi);

/// Entropy of the 16x16 two-orbital reduced density of (i, j).
template <typename Real>
double two_orbital_entropy(const BasicStateVector<Real>& psi, std::size_t i, std::size_t j);

/// I_ij = (s_i + s_j - s_ij) / 2 off the diagonal, zero on it.
template <typename Real>
Eigen::MatrixXd mutual_information(const BasicStateVector<Real>& psi);

struct DiagnosticsReport {
  std::string label;
  std::vector<double> s1;
  double z_s1 = 0.0;
  Eigen::MatrixXd mutual_information;
  /// "single-reference" when Z_s1 < 0.1, else "multi-reference". Informational.
  std::string regime;
};

template <typename Real>
DiagnosticsReport diagnose(const BasicStateVector<Real>& psi, std::string label = {});

/// Printed with every report: the normalized entropy is less reliable when
/// the active space has unequal numbers of electrons and orbitals.
extern const char* const kZs1Caveat;

}  // namespace spinvqe
