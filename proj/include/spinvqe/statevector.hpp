#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinvqe/pauli.hpp"

namespace spinvqe {

/// How reductions (sums over amplitudes) are evaluated. `deterministic`
/// fixes the summation order so repeated runs are bitwise identical;
/// `parallel` lets OpenMP split the sum when it is available.
enum class Reduction { deterministic, parallel };

/// Dense state of n qubits. Basis index bit q is the occupation of qubit q.
template <typename Real>
class BasicStateVector {
 public:
  using scalar = std::complex<Real>;

  BasicStateVector() = default;
  /// |0...0>
  explicit BasicStateVector(std::size_t n_qubits);

  static BasicStateVector basis_state(std::size_t n_qubits, std::uint64_t index);
  /// Takes ownership of `amplitudes`; size must be 2^n_qubits. Not normalized.
  static BasicStateVector from_amplitudes(std::size_t n_qubits, std::vector<scalar> amplitudes);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amp_.size(); }

  std::span<scalar> amplitudes() noexcept { return amp_; }
  std::span<const scalar> amplitudes() const noexcept { return amp_; }
  scalar& operator[](std::size_t i) { return amp_[i]; }
  const scalar& operator[](std::size_t i) const { return amp_[i]; }

  double norm() const;
  void normalize();

  template <typename Other>
  BasicStateVector<Other> cast() const {
    std::vector<std::complex<Other>> out(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i)
      out[i] = {static_cast<Other>(amp_[i].real()), static_cast<Other>(amp_[i].imag())};
    return BasicStateVector<Other>::from_amplitudes(n_qubits_, std::move(out));
  }

  bool operator==(const BasicStateVector&) const = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<scalar> amp_;
};

using StateVector = BasicStateVector<double>;
using StateVectorF32 = BasicStateVector<float>;

/// Largest register the dense engine accepts.
inline constexpr std::size_t kMaxQubits = 30;

/// Occupation string with qubit 0 leftmost ("1100" = qubits 0 and 1 set).
std::string occupation_string(std::uint64_t bits, std::size_t n_qubits);
std::uint64_t parse_occupation(std::string_view text);

/// Row-compressed complex matrix compiled from a PauliSum for repeated
/// application. Rows are independent, so application parallelizes without
/// changing results.
class SparseOperator {
 public:
  SparseOperator() = default;
  static SparseOperator from_pauli_sum(const PauliSum& sum, double drop_tolerance = 0.0);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// out = A in. `out` is resized.
  template <typename Real>
  void apply(const BasicStateVector<Real>& in, BasicStateVector<Real>& out) const;

  /// Re <psi|A|psi> with the sum accumulated in double precision.
  template <typename Real>
  double expectation(const BasicStateVector<Real>& psi, Reduction mode = Reduction::deterministic) const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint64_t> cols_;
  std::vector<cplx> values_;
};

class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_i c_i sigma_i |psi>; linear, not norm-preserving.
template <typename Real>
BasicStateVector<Real> apply_pauli_sum(const BasicStateVector<Real>& psi, const PauliSum& sum);

/// <psi|H|psi> for Hermitian H. Throws StateError when H has non-real
/// coefficients or the imaginary residue exceeds the precision's tolerance
/// (1e-10 for double, 1e-4 for float).
template <typename Real>
double expectation(const BasicStateVector<Real>& psi, const PauliSum& sum,
                   Reduction mode = Reduction::deterministic);

template <typename Real>
std::complex<double> inner_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b,
                                   Reduction mode = Reduction::deterministic);

/// Reduced density matrix of one or two spatial orbitals over the local
/// occupation basis {vac, alpha, beta, alpha-beta} (index = n_alpha + 2 n_beta;
/// for two orbitals, index = local(first) + 4 local(second)). Fermionic signs
/// are handled by moving the target modes to the front of the creation string.
template <typename Real>
Eigen::MatrixXcd reduced_density(const BasicStateVector<Real>& psi, std::span<const std::size_t> orbitals);

/// Binary snapshot: "SVQE" magic, uint32 n_qubits, uint32 precision bits
/// (32 or 64), then 2^n little-endian (re, im) pairs.
void write_snapshot(std::ostream& out, const StateVector& psi, bool as_float = false);
StateVector read_snapshot(std::istream& in);

}  // namespace spinvqe
