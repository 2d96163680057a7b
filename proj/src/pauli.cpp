#include "spinvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spinvqe {

namespace {

constexpr cplx kPhase[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

std::string PauliLetters::to_string(std::size_t n_qubits) const {
  std::string out(n_qubits, 'I');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    const bool bx = (x >> q) & 1U;
    const bool bz = (z >> q) & 1U;
    out[n_qubits - 1 - q] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }
  return out;
}

PauliLetters PauliLetters::from_string(std::string_view letters) {
  if (letters.size() > 64) throw std::invalid_argument("Pauli string longer than 64 qubits");
  PauliLetters p;
  const std::size_t n = letters.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t q = n - 1 - i;
    p = PauliLetters{p.x | single(q, letters[i]).x, p.z | single(q, letters[i]).z};
  }
  return p;
}

PauliLetters PauliLetters::single(std::size_t qubit, char letter) {
  if (qubit >= 64) throw std::invalid_argument("qubit index exceeds 63");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'I': return {};
    case 'X': return {bit, 0};
    case 'Y': return {bit, bit};
    case 'Z': return {0, bit};
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  const auto& l = a.letters;
  const auto& r = b.letters;
  const std::uint64_t x = l.x ^ r.x;
  const std::uint64_t z = l.z ^ r.z;
  // i^{|x1 z1|} X^x1 Z^z1 i^{|x2 z2|} X^x2 Z^z2, commute Z^z1 past X^x2, then
  // rewrite X^x Z^z = i^{-|x z|} P(x,z)
  const int k = std::popcount(l.x & l.z) + std::popcount(r.x & r.z) + 2 * std::popcount(l.z & r.x) -
                std::popcount(x & z);
  const int phase = ((k % 4) + 4) % 4;
  return {a.coefficient * b.coefficient * kPhase[phase], {x, z}};
}

PauliSum PauliSum::identity(std::size_t n_qubits, cplx coefficient) {
  PauliSum s(n_qubits);
  s.add(PauliLetters{}, coefficient);
  return s;
}

cplx PauliSum::coefficient(const PauliLetters& letters) const {
  const auto it = terms_.find(letters);
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliSum::add(const PauliLetters& letters, cplx coefficient) {
  if (n_qubits_ < 64 && ((letters.x | letters.z) >> n_qubits_) != 0)
    throw std::invalid_argument("Pauli term acts outside the register");
  terms_[letters] += coefficient;
}

PauliSum& PauliSum::prune(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto& [letters, c] : terms_) out.terms_.emplace(letters, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tolerance) const { return max_imaginary() <= tolerance; }

double PauliSum::max_imaginary() const {
  // every Pauli string is self-adjoint, so hermiticity means real coefficients
  double worst = 0.0;
  for (const auto& kv : terms_) worst = std::max(worst, std::abs(kv.second.imag()));
  return worst;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (n_qubits_ == 0) n_qubits_ = other.n_qubits_;
  if (other.n_qubits_ != n_qubits_ && other.n_qubits_ != 0)
    throw std::invalid_argument("PauliSum register sizes differ");
  for (const auto& [letters, c] : other.terms_) terms_[letters] += c;
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (n_qubits_ == 0) n_qubits_ = other.n_qubits_;
  if (other.n_qubits_ != n_qubits_ && other.n_qubits_ != 0)
    throw std::invalid_argument("PauliSum register sizes differ");
  for (const auto& [letters, c] : other.terms_) terms_[letters] -= c;
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
  for (auto& kv : terms_) kv.second *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("PauliSum register sizes differ");
  PauliSum out(a.n_qubits());
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) out.add(PauliString{ca, la} * PauliString{cb, lb});
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) { return (a * b - b * a).prune(); }

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) { return (a * b + b * a).prune(); }

void PauliSum::write_text(std::ostream& out) const {
  for (const auto& [letters, c] : terms_) {
    out << std::setprecision(17) << c.real() << " " << c.imag() << " " << letters.to_string(n_qubits_)
        << "\n";
  }
}

PauliSum PauliSum::read_text(std::istream& in) {
  PauliSum out;
  bool sized = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    double re = 0.0, im = 0.0;
    std::string letters;
    if (!(is >> re)) continue;  // blank line
    if (!(is >> im >> letters))
      throw std::runtime_error("Pauli dump line " + std::to_string(line_no) + ": expected 're im letters'");
    if (!sized) {
      out = PauliSum(letters.size());
      sized = true;
    } else if (letters.size() != out.n_qubits()) {
      throw std::runtime_error("Pauli dump line " + std::to_string(line_no) + ": inconsistent width");
    }
    out.add(PauliLetters::from_string(letters), cplx(re, im));
  }
  return out;
}

}  // namespace spinvqe
