#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "spinvqe/jordan_wigner.hpp"
#include "spinvqe/pauli.hpp"
#include "spinvqe/statevector.hpp"

namespace spinvqe {

enum class GeneratorKind { single, pair_double, double_ };

/// Normal-ordered excitation operator g. Its exponential acts through the
/// anti-Hermitian combination A = g - g+, for which A^3 = -A, so
/// exp(theta A) = 1 + sin(theta) A + (1 - cos(theta)) A^2 exactly.
///
/// The kernel never forms A. Every basis state u that g maps to a nonzero
/// result pairs with v = u ^ flip, and exp(theta A) is a 2x2 rotation on
/// (u, v) carrying the Jordan-Wigner sign of g|u>.
class ExcitationGenerator {
 public:
  /// a+_to a_from on spin-orbitals (modes).
  static ExcitationGenerator single(std::size_t from, std::size_t to);
  /// a+_{q alpha} a+_{q beta} a_{p beta} a_{p alpha} on spatial orbitals p -> q.
  static ExcitationGenerator pair_double(std::size_t p, std::size_t q);
  /// a+_a a+_b a_j a_i on spin-orbitals; {i, j} and {a, b} must be disjoint.
  static ExcitationGenerator double_excitation(std::size_t i, std::size_t j, std::size_t a, std::size_t b);

  GeneratorKind kind() const noexcept { return kind_; }
  /// Operator string of g, left to right.
  std::span<const LadderOp> ops() const noexcept { return {ops_.data(), n_ops_}; }
  /// Largest mode index touched plus one.
  std::size_t min_qubits() const noexcept { return min_qubits_; }

  std::uint64_t need_one() const noexcept { return need_one_; }
  std::uint64_t flip() const noexcept { return flip_; }
  /// Sign of g|u> for an admissible u.
  double sign(std::uint64_t u) const noexcept {
    return (std::popcount(u & parity_mask_) & 1) ? -base_sign_ : base_sign_;
  }

  /// A = g - g+ as a PauliSum on n_qubits.
  PauliSum anti_hermitian(std::size_t n_qubits) const;

  std::string label() const;

  bool operator==(const ExcitationGenerator& o) const;

 private:
  ExcitationGenerator(GeneratorKind kind, std::array<LadderOp, 4> ops, std::size_t n_ops);

  GeneratorKind kind_ = GeneratorKind::single;
  std::array<LadderOp, 4> ops_{};
  std::size_t n_ops_ = 0;
  std::size_t min_qubits_ = 0;
  std::uint64_t need_one_ = 0;
  std::uint64_t flip_ = 0;
  std::uint64_t parity_mask_ = 0;
  double base_sign_ = 1.0;
};

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// psi <- exp(theta A) psi. theta == 0 leaves psi untouched.
template <typename Real>
void apply_excitation_exponential(BasicStateVector<Real>& psi, const ExcitationGenerator& gen, double theta);

/// 2 Re <lambda| A |psi>, the derivative of Re <lambda|exp(theta A)|psi> at theta = 0.
template <typename Real>
double excitation_gradient_term(const BasicStateVector<Real>& lambda, const BasicStateVector<Real>& psi,
                                const ExcitationGenerator& gen);

}  // namespace spinvqe
