#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace spinvqe {

using cplx = std::complex<double>;

/// Tensor product of single-qubit Paulis as a pair of bit masks.
///
/// Qubit q carries I for (x,z) = (0,0), X for (1,0), Z for (0,1) and Y for
/// (1,1). The letter for (1,1) is Y itself, not XZ: the operator equals
/// i^{|x&z|} X^x Z^z. At most 64 qubits.
struct PauliLetters {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  auto operator<=>(const PauliLetters&) const = default;

  bool is_identity() const noexcept { return (x | z) == 0; }
  /// Upper-case letters, most significant qubit first.
  std::string to_string(std::size_t n_qubits) const;
  static PauliLetters from_string(std::string_view letters);
  static PauliLetters single(std::size_t qubit, char letter);
};

struct PauliString {
  cplx coefficient{1.0, 0.0};
  PauliLetters letters;
};

/// a * b with the phase folded into the coefficient.
PauliString operator*(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings with unique letters.
///
/// Terms are kept in a sorted map so that iteration order, and therefore
/// every downstream accumulation, is deterministic.
class PauliSum {
 public:
  using TermMap = std::map<PauliLetters, cplx>;

  static constexpr double kPruneThreshold = 1e-12;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  static PauliSum identity(std::size_t n_qubits, cplx coefficient = 1.0);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }

  /// Coefficient of the given letters (zero when absent).
  cplx coefficient(const PauliLetters& letters) const;

  void add(const PauliLetters& letters, cplx coefficient);
  void add(const PauliString& s) { add(s.letters, s.coefficient); }

  /// Drops terms with |c| < threshold.
  PauliSum& prune(double threshold = kPruneThreshold);

  PauliSum adjoint() const;
  bool is_hermitian(double tolerance = 1e-12) const;
  double max_imaginary() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// One term per line: "re im LETTERS", letters most significant qubit first.
  void write_text(std::ostream& out) const;
  static PauliSum read_text(std::istream& in);

 private:
  std::size_t n_qubits_ = 0;
  TermMap terms_;
};

PauliSum commutator(const PauliSum& a, const PauliSum& b);
PauliSum anticommutator(const PauliSum& a, const PauliSum& b);

}  // namespace spinvqe
