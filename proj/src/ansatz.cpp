#include "spinvqe/ansatz.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace spinvqe {

namespace {

constexpr std::uint64_t kAlphaMask = 0x5555555555555555ULL;

struct Occupation {
  std::size_t doubly = 0;
  std::size_t singly = 0;
};

Occupation check_feasible(std::size_t n_orb, int n_electrons, int spin) {
  if (n_orb == 0 || 2 * n_orb > kMaxQubits) throw InfeasibleSpin("orbital count outside the supported range");
  if (n_electrons <= 0 || n_electrons % 2 != 0)
    throw InfeasibleSpin("reference states need a positive even electron count");
  if (spin < 0 || spin > 2) throw InfeasibleSpin("spin must be 0, 1 or 2");
  if (2 * spin > n_electrons)
    throw InfeasibleSpin("spin " + std::to_string(spin) + " needs more than " + std::to_string(n_electrons) +
                         " electrons");
  const Occupation occ{static_cast<std::size_t>((n_electrons - 2 * spin) / 2), static_cast<std::size_t>(2 * spin)};
  if (occ.doubly + occ.singly > n_orb)
    throw InfeasibleSpin("spin " + std::to_string(spin) + " with " + std::to_string(n_electrons) +
                         " electrons does not fit in " + std::to_string(n_orb) + " orbitals");
  return occ;
}

std::uint64_t doubly_occupied(std::size_t d) { return d == 0 ? 0 : (std::uint64_t{1} << (2 * d)) - 1; }

std::uint64_t alpha(std::size_t p) { return std::uint64_t{1} << spin_orbital(p, Spin::alpha); }

}  // namespace

int ReferenceState::n_alpha() const {
  return kets.empty() ? 0 : std::popcount(kets.front().first & kAlphaMask);
}

int ReferenceState::n_beta() const {
  return kets.empty() ? 0 : std::popcount(kets.front().first & ~kAlphaMask);
}

ReferenceState build_reference_T0(std::size_t n_orb, int n_electrons, int spin) {
  const Occupation occ = check_feasible(n_orb, n_electrons, spin);
  std::uint64_t bits = doubly_occupied(occ.doubly);
  for (std::size_t i = 0; i < occ.singly; ++i) bits |= alpha(occ.doubly + i);
  return {n_orb, n_electrons, spin, {{bits, cplx(1.0)}}};
}

ReferenceState build_reference_T1(std::size_t n_orb, int n_electrons, int spin) {
  if (spin != 1) return build_reference_T0(n_orb, n_electrons, spin);
  const Occupation occ = check_feasible(n_orb, n_electrons, spin);
  const std::size_t d = occ.doubly;
  if (d + 3 > n_orb) throw InfeasibleSpin("the two-determinant triplet needs three open orbitals above the closed shells");
  const double r = 1.0 / std::sqrt(2.0);
  const std::uint64_t closed = doubly_occupied(d);
  return {n_orb, n_electrons, spin,
          {{closed | alpha(d + 1) | alpha(d + 2), cplx(r)}, {closed | alpha(d) | alpha(d + 2), cplx(-r)}}};
}

ReferenceState build_reference(InitialState family, std::size_t n_orb, int n_electrons, int spin) {
  return family == InitialState::T0 ? build_reference_T0(n_orb, n_electrons, spin)
                                    : build_reference_T1(n_orb, n_electrons, spin);
}

template <typename Real>
BasicStateVector<Real> prepare_state(const ReferenceState& ref) {
  BasicStateVector<Real> psi(ref.n_qubits());
  psi[0] = {};
  for (const auto& [bits, c] : ref.kets)
    psi[bits] += std::complex<Real>(static_cast<Real>(c.real()), static_cast<Real>(c.imag()));
  return psi;
}

template BasicStateVector<float> prepare_state(const ReferenceState&);
template BasicStateVector<double> prepare_state(const ReferenceState&);

namespace {

/// Assigns parameter slots by key in first-seen order.
class SlotTable {
 public:
  std::size_t get(const std::string& key) {
    const auto [it, inserted] = slots_.emplace(key, slots_.size());
    return it->second;
  }
  std::size_t size() const { return slots_.size(); }

 private:
  std::map<std::string, std::size_t> slots_;
};

void push(AnsatzProgram& prog, SlotTable& slots, ExcitationGenerator gen, std::size_t layer,
          const std::string& key) {
  prog.generators.push_back(std::move(gen));
  prog.layer.push_back(layer);
  prog.slot.push_back(slots.get(key));
}

std::string idx(std::size_t layer, const char* tag, std::initializer_list<std::size_t> xs) {
  std::string s = std::to_string(layer) + tag;
  for (std::size_t x : xs) s += "." + std::to_string(x);
  return s;
}

void compile_kupccgsd(const AnsatzSpec& spec, std::size_t m, AnsatzProgram& prog, SlotTable& slots) {
  for (std::size_t layer = 0; layer < spec.k; ++layer) {
    const bool share_spins = spec.spin_adapted_singles || (spec.tying == Tying::paper_count && layer == 0);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q) {
        if (p == q) continue;
        for (Spin s : {Spin::alpha, Spin::beta}) {
          const std::string key = share_spins ? idx(layer, "s", {p, q})
                                              : idx(layer, "s", {p, q, static_cast<std::size_t>(s)});
          push(prog, slots, ExcitationGenerator::single(spin_orbital(p, s), spin_orbital(q, s)), layer, key);
        }
      }
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q) {
        if (p == q) continue;
        push(prog, slots, ExcitationGenerator::pair_double(p, q), layer, idx(layer, "d", {p, q}));
      }
  }
}

int spin_of(std::size_t mode) { return (mode % 2 == 0) ? 1 : -1; }

/// Singles and doubles between the given source and target mode sets,
/// conserving S_z. Each unordered excitation appears once.
void compile_ucc(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to, bool generalized,
                 const AnsatzSpec& spec, AnsatzProgram& prog, SlotTable& slots) {
  for (std::size_t i : from)
    for (std::size_t a : to) {
      if (i == a || spin_of(i) != spin_of(a)) continue;
      if (generalized && a < i) continue;
      const std::size_t p = i / 2, q = a / 2;
      const std::string key = spec.spin_adapted_singles ? idx(0, "s", {p, q}) : idx(0, "s", {i, a});
      push(prog, slots, ExcitationGenerator::single(i, a), 0, key);
    }
  for (std::size_t x = 0; x < from.size(); ++x)
    for (std::size_t y = x + 1; y < from.size(); ++y)
      for (std::size_t u = 0; u < to.size(); ++u)
        for (std::size_t w = u + 1; w < to.size(); ++w) {
          const std::size_t i = from[x], j = from[y], a = to[u], b = to[w];
          if (i == a || i == b || j == a || j == b) continue;
          if (spin_of(i) + spin_of(j) != spin_of(a) + spin_of(b)) continue;
          if (generalized && std::pair(a, b) < std::pair(i, j)) continue;
          push(prog, slots, ExcitationGenerator::double_excitation(i, j, a, b), 0, idx(0, "d", {i, j, a, b}));
        }
}

}  // namespace

AnsatzProgram compile_ansatz(const AnsatzSpec& spec, std::size_t n_orb, int n_alpha, int n_beta) {
  if (n_orb == 0 || 2 * n_orb > 64) throw std::invalid_argument("compile_ansatz: unsupported orbital count");
  if (spec.k == 0) throw std::invalid_argument("compile_ansatz: k must be at least 1");
  if (spec.flavor != AnsatzFlavor::kUpCCGSD && spec.k != 1)
    throw std::invalid_argument("compile_ansatz: " + to_string(spec.flavor) + " supports k = 1 only");
  if (spec.flavor != AnsatzFlavor::kUpCCGSD && spec.tying == Tying::paper_count)
    throw std::invalid_argument("compile_ansatz: paper-count tying applies to k-UpCCGSD only");

  AnsatzProgram prog;
  prog.n_qubits = 2 * n_orb;
  SlotTable slots;
  const std::size_t n = 2 * n_orb;
  switch (spec.flavor) {
    case AnsatzFlavor::kUpCCGSD:
      compile_kupccgsd(spec, n_orb, prog, slots);
      break;
    case AnsatzFlavor::UCCGSD: {
      std::vector<std::size_t> all(n);
      for (std::size_t j = 0; j < n; ++j) all[j] = j;
      compile_ucc(all, all, true, spec, prog, slots);
      break;
    }
    case AnsatzFlavor::UCCSD: {
      const ReferenceState ref = build_reference_T0(n_orb, n_alpha + n_beta, spec.reference_spin);
      const std::uint64_t occ = ref.kets.front().first;
      std::vector<std::size_t> occupied, virt;
      for (std::size_t j = 0; j < n; ++j) ((occ >> j) & 1U ? occupied : virt).push_back(j);
      compile_ucc(occupied, virt, false, spec, prog, slots);
      break;
    }
  }
  prog.n_parameters = slots.size();
  return prog;
}

template <typename Real>
void apply_ansatz(BasicStateVector<Real>& psi, const AnsatzProgram& program, std::span<const double> theta) {
  if (theta.size() != program.n_parameters)
    throw std::invalid_argument("apply_ansatz: expected " + std::to_string(program.n_parameters) +
                                " parameters, got " + std::to_string(theta.size()));
  if (psi.n_qubits() != program.n_qubits) throw StateError("apply_ansatz: register size differs from program");
  for (std::size_t i = 0; i < program.size(); ++i)
    apply_excitation_exponential(psi, program.generators[i], theta[program.slot[i]]);
}

template void apply_ansatz(BasicStateVector<float>&, const AnsatzProgram&, std::span<const double>);
template void apply_ansatz(BasicStateVector<double>&, const AnsatzProgram&, std::span<const double>);

std::string to_string(AnsatzFlavor flavor) {
  switch (flavor) {
    case AnsatzFlavor::UCCSD: return "UCCSD";
    case AnsatzFlavor::UCCGSD: return "UCCGSD";
    case AnsatzFlavor::kUpCCGSD: return "kUpCCGSD";
  }
  return "?";
}

AnsatzFlavor parse_flavor(std::string_view text) {
  if (text == "UCCSD") return AnsatzFlavor::UCCSD;
  if (text == "UCCGSD") return AnsatzFlavor::UCCGSD;
  if (text == "kUpCCGSD" || text == "k-UpCCGSD") return AnsatzFlavor::kUpCCGSD;
  throw std::invalid_argument("unknown ansatz '" + std::string(text) + "'");
}

std::string to_string(Tying tying) { return tying == Tying::independent ? "independent" : "paper-count"; }

Tying parse_tying(std::string_view text) {
  if (text == "independent") return Tying::independent;
  if (text == "paper-count") return Tying::paper_count;
  throw std::invalid_argument("unknown tying '" + std::string(text) + "'");
}

std::string to_string(InitialState s) { return s == InitialState::T0 ? "T0" : "T1"; }

InitialState parse_initial_state(std::string_view text) {
  if (text == "T0") return InitialState::T0;
  if (text == "T1") return InitialState::T1;
  throw std::invalid_argument("unknown initial state '" + std::string(text) + "'");
}

}  // namespace spinvqe
