#include "spinvqe/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinvqe {

namespace {

std::uint64_t bit(std::size_t j) { return std::uint64_t{1} << j; }

void check_mode(std::size_t j) {
  if (j >= 64) throw GeneratorError("mode index " + std::to_string(j) + " exceeds 63");
}

/// Index of the k-th admissible basis state: k with zero bits spliced in at
/// the (ascending) flip positions, then the required ones set.
struct Splicer {
  std::array<std::size_t, 4> pos{};
  std::size_t n = 0;
  std::uint64_t ones = 0;

  std::uint64_t operator()(std::uint64_t k) const noexcept {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t low = k & (bit(pos[i]) - 1);
      k = ((k >> pos[i]) << (pos[i] + 1)) | low;
    }
    return k | ones;
  }
};

Splicer make_splicer(const ExcitationGenerator& gen) {
  Splicer s;
  std::uint64_t f = gen.flip();
  while (f) {
    s.pos[s.n++] = static_cast<std::size_t>(std::countr_zero(f));
    f &= f - 1;
  }
  s.ones = gen.need_one();
  return s;
}

void check_register(std::size_t n_qubits, const ExcitationGenerator& gen) {
  if (gen.min_qubits() > n_qubits)
    throw GeneratorError("generator " + gen.label() + " acts outside a " + std::to_string(n_qubits) +
                         "-qubit register");
}

}  // namespace

ExcitationGenerator::ExcitationGenerator(GeneratorKind kind, std::array<LadderOp, 4> ops, std::size_t n_ops)
    : kind_(kind), ops_(ops), n_ops_(n_ops) {
  std::uint64_t create = 0, annihilate = 0;
  for (std::size_t k = 0; k < n_ops_; ++k) {
    check_mode(ops_[k].mode);
    min_qubits_ = std::max(min_qubits_, ops_[k].mode + 1);
    std::uint64_t& set = ops_[k].dagger ? create : annihilate;
    if (set & bit(ops_[k].mode)) throw GeneratorError("repeated mode in excitation generator");
    set |= bit(ops_[k].mode);
  }
  if (create & annihilate) throw GeneratorError("excitation generator creates into an annihilated mode");
  need_one_ = annihilate;
  flip_ = create | annihilate;

  // Apply the operators right to left on the minimal admissible state to get
  // the sign; every other admissible state differs only in spectator bits,
  // whose parity contribution is linear.
  std::uint64_t b = need_one_;
  int parity = 0;
  std::uint64_t mask = 0;
  for (std::size_t k = n_ops_; k-- > 0;) {
    const std::uint64_t low = bit(ops_[k].mode) - 1;
    parity += std::popcount(b & low);
    mask ^= low;
    b ^= bit(ops_[k].mode);
  }
  base_sign_ = (parity & 1) ? -1.0 : 1.0;
  parity_mask_ = mask & ~flip_;
}

ExcitationGenerator ExcitationGenerator::single(std::size_t from, std::size_t to) {
  if (from == to) throw GeneratorError("single excitation needs distinct modes");
  return {GeneratorKind::single, {LadderOp{to, true}, LadderOp{from, false}}, 2};
}

ExcitationGenerator ExcitationGenerator::pair_double(std::size_t p, std::size_t q) {
  if (p == q) throw GeneratorError("pair double needs distinct orbitals");
  const std::size_t pa = spin_orbital(p, Spin::alpha), pb = spin_orbital(p, Spin::beta);
  const std::size_t qa = spin_orbital(q, Spin::alpha), qb = spin_orbital(q, Spin::beta);
  return {GeneratorKind::pair_double,
          {LadderOp{qa, true}, LadderOp{qb, true}, LadderOp{pb, false}, LadderOp{pa, false}},
          4};
}

ExcitationGenerator ExcitationGenerator::double_excitation(std::size_t i, std::size_t j, std::size_t a,
                                                           std::size_t b) {
  if (i == j || a == b) throw GeneratorError("double excitation needs distinct modes");
  return {GeneratorKind::double_, {LadderOp{a, true}, LadderOp{b, true}, LadderOp{j, false}, LadderOp{i, false}},
          4};
}

PauliSum ExcitationGenerator::anti_hermitian(std::size_t n_qubits) const {
  check_register(n_qubits, *this);
  const PauliSum g = jw_product(ops(), n_qubits);
  return (g - g.adjoint()).prune();
}

std::string ExcitationGenerator::label() const {
  std::ostringstream os;
  os << (kind_ == GeneratorKind::single ? "S" : kind_ == GeneratorKind::pair_double ? "P" : "D") << "(";
  for (std::size_t k = 0; k < n_ops_; ++k) os << (k ? " " : "") << ops_[k].mode << (ops_[k].dagger ? "+" : "");
  os << ")";
  return os.str();
}

bool ExcitationGenerator::operator==(const ExcitationGenerator& o) const {
  if (kind_ != o.kind_ || n_ops_ != o.n_ops_) return false;
  for (std::size_t k = 0; k < n_ops_; ++k)
    if (ops_[k].mode != o.ops_[k].mode || ops_[k].dagger != o.ops_[k].dagger) return false;
  return true;
}

template <typename Real>
void apply_excitation_exponential(BasicStateVector<Real>& psi, const ExcitationGenerator& gen, double theta) {
  check_register(psi.n_qubits(), gen);
  if (theta == 0.0) return;
  const Real c = static_cast<Real>(std::cos(theta));
  const Real s = static_cast<Real>(std::sin(theta));
  const Splicer splice = make_splicer(gen);
  const std::uint64_t flip = gen.flip();
  const std::int64_t count = static_cast<std::int64_t>(psi.dimension() >> splice.n);
  auto amp = psi.amplitudes();
#if defined(SPINVQE_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (count > 8192)
#endif
  for (std::int64_t k = 0; k < count; ++k) {
    const std::uint64_t u = splice(static_cast<std::uint64_t>(k));
    const std::uint64_t v = u ^ flip;
    const Real ss = static_cast<Real>(gen.sign(u)) * s;
    const std::complex<Real> au = amp[u], av = amp[v];
    amp[u] = c * au - ss * av;
    amp[v] = ss * au + c * av;
  }
}

template <typename Real>
double excitation_gradient_term(const BasicStateVector<Real>& lambda, const BasicStateVector<Real>& psi,
                                const ExcitationGenerator& gen) {
  check_register(psi.n_qubits(), gen);
  if (lambda.n_qubits() != psi.n_qubits()) throw StateError("excitation_gradient_term: register sizes differ");
  const Splicer splice = make_splicer(gen);
  const std::uint64_t flip = gen.flip();
  const std::uint64_t count = psi.dimension() >> splice.n;
  const auto l = lambda.amplitudes();
  const auto p = psi.amplitudes();
  double acc = 0.0;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t u = splice(k);
    const std::uint64_t v = u ^ flip;
    const cplx t = std::conj(cplx(l[v])) * cplx(p[u]) - std::conj(cplx(l[u])) * cplx(p[v]);
    acc += gen.sign(u) * t.real();
  }
  return 2.0 * acc;
}

template void apply_excitation_exponential(BasicStateVector<float>&, const ExcitationGenerator&, double);
template void apply_excitation_exponential(BasicStateVector<double>&, const ExcitationGenerator&, double);
template double excitation_gradient_term(const BasicStateVector<float>&, const BasicStateVector<float>&,
                                         const ExcitationGenerator&);
template double excitation_gradient_term(const BasicStateVector<double>&, const BasicStateVector<double>&,
                                         const ExcitationGenerator&);

}  // namespace spinvqe
