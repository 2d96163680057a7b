#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinvqe/excitation.hpp"
#include "spinvqe/statevector.hpp"

namespace spinvqe {

/// Normalized superposition of occupation-number kets.
struct ReferenceState {
  std::size_t n_orb = 0;
  int n_electrons = 0;
  int target_spin = 0;
  /// Basis index (bit q = qubit q) and amplitude.
  std::vector<std::pair<std::uint64_t, cplx>> kets;

  std::size_t n_qubits() const noexcept { return 2 * n_orb; }
  int n_alpha() const;
  int n_beta() const;
};

/// Raised when the requested spin cannot be realized with the given
/// electron and orbital counts.
class InfeasibleSpin : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Single determinant: (N - 2S)/2 doubly occupied orbitals followed by 2S
/// alpha-singly occupied orbitals.
ReferenceState build_reference_T0(std::size_t n_orb, int n_electrons, int spin);

/// For S = 1, the two-determinant triplet
///   (|D, alpha(d+1), alpha(d+2)> - |D, alpha(d), alpha(d+2)>) / sqrt(2)
/// with D the d = (N-2)/2 doubly occupied orbitals. Other spins return T0.
ReferenceState build_reference_T1(std::size_t n_orb, int n_electrons, int spin);

enum class InitialState { T0, T1 };

ReferenceState build_reference(InitialState family, std::size_t n_orb, int n_electrons, int spin);

template <typename Real>
BasicStateVector<Real> prepare_state(const ReferenceState& ref);

enum class AnsatzFlavor { UCCSD, UCCGSD, kUpCCGSD };

/// `independent`: one parameter per generator.
/// `paper_count`: ties the alpha and beta copies of each first-layer single,
/// removing M(M-1) parameters so that k-UpCCGSD has (3k-1) M(M-1). The
/// original tying is unknown; this is a reconstruction that matches the
/// published counts.
enum class Tying { independent, paper_count };

struct AnsatzSpec {
  AnsatzFlavor flavor = AnsatzFlavor::kUpCCGSD;
  std::size_t k = 1;
  /// Share one parameter between the alpha and beta single p -> q in every layer.
  bool spin_adapted_singles = false;
  Tying tying = Tying::independent;
  /// Spin of the T0 determinant that defines occupied/virtual for UCCSD.
  int reference_spin = 0;
};

struct AnsatzProgram {
  std::size_t n_qubits = 0;
  std::vector<ExcitationGenerator> generators;
  std::vector<std::size_t> layer;
  /// slot[i] is the parameter index driving generators[i].
  std::vector<std::size_t> slot;
  std::size_t n_parameters = 0;

  std::size_t size() const noexcept { return generators.size(); }
};

AnsatzProgram compile_ansatz(const AnsatzSpec& spec, std::size_t n_orb, int n_alpha, int n_beta);

/// psi <- prod_i exp(theta[slot[i]] A_i) psi, generator 0 applied first.
template <typename Real>
void apply_ansatz(BasicStateVector<Real>& psi, const AnsatzProgram& program, std::span<const double> theta);

std::string to_string(AnsatzFlavor flavor);
AnsatzFlavor parse_flavor(std::string_view text);
std::string to_string(Tying tying);
Tying parse_tying(std::string_view text);
std::string to_string(InitialState s);
InitialState parse_initial_state(std::string_view text);

}  // namespace spinvqe
