#include "spinvqe/jordan_wigner.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace spinvqe {

namespace {

using Expansion = std::vector<PauliString>;

/// The two Pauli strings of a single ladder operator.
std::array<PauliString, 2> ladder_strings(std::size_t j, bool dagger, std::size_t n_qubits) {
  if (j >= n_qubits) throw std::out_of_range("spin-orbital index outside the register");
  const std::uint64_t parity = (std::uint64_t{1} << j) - 1;
  const std::uint64_t bit = std::uint64_t{1} << j;
  const cplx half_i = dagger ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
  return {PauliString{cplx(0.5, 0.0), {bit, parity}}, PauliString{half_i, {bit, parity | bit}}};
}

Expansion expand(std::span<const LadderOp> ops, std::size_t n_qubits) {
  Expansion acc{PauliString{}};
  for (const LadderOp& op : ops) {
    const auto strings = ladder_strings(op.mode, op.dagger, n_qubits);
    Expansion next;
    next.reserve(acc.size() * 2);
    for (const PauliString& a : acc)
      for (const PauliString& b : strings) next.push_back(a * b);
    acc = std::move(next);
  }
  return acc;
}

void accumulate(PauliSum& sum, std::span<const LadderOp> ops, double weight) {
  for (const PauliString& s : expand(ops, sum.n_qubits())) sum.add(s.letters, weight * s.coefficient);
}

}  // namespace

PauliSum jw_lowering(std::size_t spin_orbital, std::size_t n_qubits) {
  const LadderOp op{spin_orbital, false};
  PauliSum s(n_qubits);
  accumulate(s, std::span(&op, 1), 1.0);
  return s;
}

PauliSum jw_raising(std::size_t spin_orbital, std::size_t n_qubits) {
  const LadderOp op{spin_orbital, true};
  PauliSum s(n_qubits);
  accumulate(s, std::span(&op, 1), 1.0);
  return s;
}

PauliSum jw_product(std::span<const LadderOp> ops, std::size_t n_qubits) {
  PauliSum s(n_qubits);
  accumulate(s, ops, 1.0);
  return s.prune();
}

PauliSum build_qubit_hamiltonian(const ActiveSpaceIntegrals& ints) {
  const std::size_t m = ints.n_orb;
  if (m == 0) throw IntegralError("build_qubit_hamiltonian: no orbitals");
  const std::size_t n = 2 * m;
  PauliSum h(n);
  h.add(PauliLetters{}, ints.core_energy);

  constexpr Spin spins[2] = {Spin::alpha, Spin::beta};
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      const double v = ints.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      if (v == 0.0) continue;
      for (Spin s : spins) {
        const LadderOp ops[] = {{spin_orbital(p, s), true}, {spin_orbital(q, s), false}};
        accumulate(h, ops, v);
      }
    }

  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          const double v = ints.g(p, q, r, s);
          if (v == 0.0) continue;
          for (Spin sig : spins)
            for (Spin tau : spins) {
              const std::size_t P = spin_orbital(p, sig), Q = spin_orbital(q, sig);
              const std::size_t R = spin_orbital(r, tau), S = spin_orbital(s, tau);
              if (P == R || Q == S) continue;  // a+_P a+_P = 0
              const LadderOp ops[] = {{P, true}, {R, true}, {S, false}, {Q, false}};
              accumulate(h, ops, 0.5 * v);
            }
        }
  return h.prune();
}

SpinObservables build_spin_observables(std::size_t n_orb) {
  if (n_orb == 0) throw std::invalid_argument("build_spin_observables: no orbitals");
  const std::size_t n = 2 * n_orb;
  PauliSum number(n), sz(n), s_plus(n);
  for (std::size_t p = 0; p < n_orb; ++p) {
    const std::size_t a = spin_orbital(p, Spin::alpha);
    const std::size_t b = spin_orbital(p, Spin::beta);
    const LadderOp na[] = {{a, true}, {a, false}};
    const LadderOp nb[] = {{b, true}, {b, false}};
    accumulate(number, na, 1.0);
    accumulate(number, nb, 1.0);
    accumulate(sz, na, 0.5);
    accumulate(sz, nb, -0.5);
    const LadderOp flip[] = {{a, true}, {b, false}};
    accumulate(s_plus, flip, 1.0);
  }
  number.prune();
  sz.prune();
  s_plus.prune();
  const PauliSum s_minus = s_plus.adjoint();
  PauliSum s2 = s_minus * s_plus + sz * sz + sz;
  s2.prune();
  return {std::move(s2), std::move(sz), std::move(number)};
}

}  // namespace spinvqe
