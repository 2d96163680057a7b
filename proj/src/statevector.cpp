#include "spinvqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace spinvqe {

namespace {

constexpr cplx kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

void check_qubits(std::size_t n) {
  if (n > kMaxQubits) throw StateError("register of " + std::to_string(n) + " qubits exceeds the dense limit");
}

/// Pauli terms grouped by X mask, with i^{|x&z|} folded into the coefficient.
std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, cplx>>> group_by_x(const PauliSum& sum) {
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, cplx>>> groups;
  for (const auto& [letters, c] : sum.terms())
    groups[letters.x].emplace_back(letters.z, c * kIPow[std::popcount(letters.x & letters.z) % 4]);
  return groups;
}

template <typename Real>
void check_same(const BasicStateVector<Real>& a, std::size_t n_qubits, const char* what) {
  if (a.n_qubits() != n_qubits) throw StateError(std::string(what) + ": register sizes differ");
}

}  // namespace

// ---------------------------------------------------------------------------
// BasicStateVector

template <typename Real>
BasicStateVector<Real>::BasicStateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
  amp_.assign(std::size_t{1} << n_qubits, scalar{});
  amp_[0] = scalar{1};
}

template <typename Real>
BasicStateVector<Real> BasicStateVector<Real>::basis_state(std::size_t n_qubits, std::uint64_t index) {
  BasicStateVector s(n_qubits);
  if (index >= s.amp_.size()) throw StateError("basis index outside the register");
  s.amp_[0] = scalar{};
  s.amp_[index] = scalar{1};
  return s;
}

template <typename Real>
BasicStateVector<Real> BasicStateVector<Real>::from_amplitudes(std::size_t n_qubits,
                                                               std::vector<scalar> amplitudes) {
  check_qubits(n_qubits);
  if (amplitudes.size() != (std::size_t{1} << n_qubits)) throw StateError("amplitude count is not 2^n");
  BasicStateVector s;
  s.n_qubits_ = n_qubits;
  s.amp_ = std::move(amplitudes);
  return s;
}

template <typename Real>
double BasicStateVector<Real>::norm() const {
  double acc = 0.0;
  for (const auto& a : amp_) acc += std::norm(std::complex<double>(a));
  return std::sqrt(acc);
}

template <typename Real>
void BasicStateVector<Real>::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw StateError("cannot normalize the zero vector");
  const Real inv = static_cast<Real>(1.0 / nrm);
  for (auto& a : amp_) a *= inv;
}

template class BasicStateVector<float>;
template class BasicStateVector<double>;

// ---------------------------------------------------------------------------
// bit strings

std::string occupation_string(std::uint64_t bits, std::size_t n_qubits) {
  std::string out(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q)
    if ((bits >> q) & 1U) out[q] = '1';
  return out;
}

std::uint64_t parse_occupation(std::string_view text) {
  if (text.size() > 64) throw std::invalid_argument("occupation string longer than 64");
  std::uint64_t bits = 0;
  for (std::size_t q = 0; q < text.size(); ++q) {
    if (text[q] == '1')
      bits |= std::uint64_t{1} << q;
    else if (text[q] != '0')
      throw std::invalid_argument("occupation string must contain only 0 and 1");
  }
  return bits;
}

// ---------------------------------------------------------------------------
// SparseOperator

SparseOperator SparseOperator::from_pauli_sum(const PauliSum& sum, double drop_tolerance) {
  const std::size_t n = sum.n_qubits();
  check_qubits(n);
  const auto groups = group_by_x(sum);
  const std::uint64_t dim = std::uint64_t{1} << n;

  SparseOperator op;
  op.n_qubits_ = n;
  op.row_ptr_.reserve(dim + 1);
  op.row_ptr_.push_back(0);
  for (std::uint64_t row = 0; row < dim; ++row) {
    for (const auto& [x, zs] : groups) {
      const std::uint64_t col = row ^ x;
      cplx v{};
      for (const auto& [z, c] : zs) v += parity_sign(z & col) * c;
      if (std::abs(v) > drop_tolerance) {
        op.cols_.push_back(col);
        op.values_.push_back(v);
      }
    }
    op.row_ptr_.push_back(op.values_.size());
  }
  return op;
}

template <typename Real>
void SparseOperator::apply(const BasicStateVector<Real>& in, BasicStateVector<Real>& out) const {
  check_same(in, n_qubits_, "SparseOperator::apply");
  const std::size_t dim = in.dimension();
  std::vector<std::complex<Real>> buf(dim);
  const auto src = in.amplitudes();
  const std::int64_t rows = static_cast<std::int64_t>(dim);
#if defined(SPINVQE_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (rows > 4096)
#endif
  for (std::int64_t r = 0; r < rows; ++r) {
    cplx acc{};
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * cplx(src[cols_[k]]);
    buf[static_cast<std::size_t>(r)] = {static_cast<Real>(acc.real()), static_cast<Real>(acc.imag())};
  }
  out = BasicStateVector<Real>::from_amplitudes(in.n_qubits(), std::move(buf));
}

template <typename Real>
double SparseOperator::expectation(const BasicStateVector<Real>& psi, Reduction mode) const {
  check_same(psi, n_qubits_, "SparseOperator::expectation");
  const auto a = psi.amplitudes();
  const std::int64_t rows = static_cast<std::int64_t>(a.size());
  double acc = 0.0;
  auto row_value = [&](std::int64_t r) {
    cplx t{};
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t += values_[k] * cplx(a[cols_[k]]);
    return (std::conj(cplx(a[static_cast<std::size_t>(r)])) * t).real();
  };
  if (mode == Reduction::parallel) {
#if defined(SPINVQE_HAVE_OPENMP)
#pragma omp parallel for reduction(+ : acc) schedule(static) if (rows > 4096)
#endif
    for (std::int64_t r = 0; r < rows; ++r) acc += row_value(r);
  } else {
    for (std::int64_t r = 0; r < rows; ++r) acc += row_value(r);
  }
  return acc;
}

template void SparseOperator::apply(const BasicStateVector<float>&, BasicStateVector<float>&) const;
template void SparseOperator::apply(const BasicStateVector<double>&, BasicStateVector<double>&) const;
template double SparseOperator::expectation(const BasicStateVector<float>&, Reduction) const;
template double SparseOperator::expectation(const BasicStateVector<double>&, Reduction) const;

// ---------------------------------------------------------------------------
// Pauli application and products

template <typename Real>
BasicStateVector<Real> apply_pauli_sum(const BasicStateVector<Real>& psi, const PauliSum& sum) {
  check_same(psi, sum.n_qubits(), "apply_pauli_sum");
  const auto groups = group_by_x(sum);
  const auto src = psi.amplitudes();
  std::vector<cplx> acc(src.size());
  for (const auto& [x, zs] : groups)
    for (std::uint64_t b = 0; b < src.size(); ++b) {
      cplx v{};
      for (const auto& [z, c] : zs) v += parity_sign(z & b) * c;
      acc[b ^ x] += v * cplx(src[b]);
    }
  std::vector<std::complex<Real>> out(src.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {static_cast<Real>(acc[i].real()), static_cast<Real>(acc[i].imag())};
  return BasicStateVector<Real>::from_amplitudes(psi.n_qubits(), std::move(out));
}

template <typename Real>
double expectation(const BasicStateVector<Real>& psi, const PauliSum& sum, Reduction mode) {
  if (!sum.is_hermitian(1e-12)) throw StateError("expectation: operator is not Hermitian");
  const BasicStateVector<Real> h_psi = apply_pauli_sum(psi, sum);
  const std::complex<double> e = inner_product(psi, h_psi, mode);
  const double tol = std::is_same_v<Real, float> ? 1e-4 : 1e-10;
  if (std::abs(e.imag()) > tol * std::max(1.0, std::abs(e.real())))
    throw StateError("expectation: imaginary residue " + std::to_string(e.imag()));
  return e.real();
}

template <typename Real>
std::complex<double> inner_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b,
                                   Reduction mode) {
  if (a.n_qubits() != b.n_qubits()) throw StateError("inner_product: register sizes differ");
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  double re = 0.0, im = 0.0;
  if (mode == Reduction::parallel) {
#if defined(SPINVQE_HAVE_OPENMP)
#pragma omp parallel for reduction(+ : re, im) schedule(static) if (n > 4096)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
      const cplx t = std::conj(cplx(x[i])) * cplx(y[i]);
      re += t.real();
      im += t.imag();
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      const cplx t = std::conj(cplx(x[i])) * cplx(y[i]);
      re += t.real();
      im += t.imag();
    }
  }
  return {re, im};
}

template BasicStateVector<float> apply_pauli_sum(const BasicStateVector<float>&, const PauliSum&);
template BasicStateVector<double> apply_pauli_sum(const BasicStateVector<double>&, const PauliSum&);
template double expectation(const BasicStateVector<float>&, const PauliSum&, Reduction);
template double expectation(const BasicStateVector<double>&, const PauliSum&, Reduction);
template std::complex<double> inner_product(const BasicStateVector<float>&, const BasicStateVector<float>&,
                                            Reduction);
template std::complex<double> inner_product(const BasicStateVector<double>&, const BasicStateVector<double>&,
                                            Reduction);

// ---------------------------------------------------------------------------
// orbital reduced densities

template <typename Real>
Eigen::MatrixXcd reduced_density(const BasicStateVector<Real>& psi, std::span<const std::size_t> orbitals) {
  const std::size_t n = psi.n_qubits();
  const std::size_t m = n / 2;
  if (orbitals.empty() || orbitals.size() > 2) throw StateError("reduced_density: need one or two orbitals");
  for (std::size_t o : orbitals)
    if (o >= m) throw StateError("reduced_density: orbital index out of range");
  if (orbitals.size() == 2 && orbitals[0] == orbitals[1])
    throw StateError("reduced_density: repeated orbital index");

  // target modes in local order: first orbital (alpha, beta), second orbital (alpha, beta)
  std::vector<std::size_t> modes;
  for (std::size_t o : orbitals) {
    modes.push_back(2 * o);
    modes.push_back(2 * o + 1);
  }
  const std::size_t n_local = modes.size();
  const std::size_t local_dim = std::size_t{1} << n_local;
  std::uint64_t target = 0;
  for (std::size_t md : modes) target |= std::uint64_t{1} << md;
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  const std::uint64_t env_mask = full & ~target;

  // Sign of reordering the creation string from ascending mode order to
  // (targets in local order, then environment ascending).
  auto reorder_sign = [&](std::uint64_t b) {
    int inversions = 0;
    for (std::size_t i = 0; i < n_local; ++i) {
      const std::size_t t = modes[i];
      if (!((b >> t) & 1U)) continue;
      const std::uint64_t below = (std::uint64_t{1} << t) - 1;
      inversions += std::popcount(b & env_mask & below);
      for (std::size_t j = i + 1; j < n_local; ++j)
        if (modes[j] < t && ((b >> modes[j]) & 1U)) ++inversions;
    }
    return (inversions & 1) ? -1.0 : 1.0;
  };

  const auto amp = psi.amplitudes();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(local_dim),
                                                static_cast<Eigen::Index>(local_dim));
  Eigen::VectorXcd local(static_cast<Eigen::Index>(local_dim));
  std::uint64_t env = 0;
  while (true) {
    for (std::size_t k = 0; k < local_dim; ++k) {
      std::uint64_t b = env;
      for (std::size_t i = 0; i < n_local; ++i)
        if ((k >> i) & 1U) b |= std::uint64_t{1} << modes[i];
      local(static_cast<Eigen::Index>(k)) = reorder_sign(b) * cplx(amp[b]);
    }
    rho.noalias() += local * local.adjoint();
    if (env == env_mask) break;
    env = (env - env_mask) & env_mask;  // next submask in increasing order
  }
  return rho;
}

template Eigen::MatrixXcd reduced_density(const BasicStateVector<float>&, std::span<const std::size_t>);
template Eigen::MatrixXcd reduced_density(const BasicStateVector<double>&, std::span<const std::size_t>);

// ---------------------------------------------------------------------------
// snapshots

namespace {

constexpr char kMagic[4] = {'S', 'V', 'Q', 'E'};

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw StateError("truncated state snapshot");
  return v;
}

}  // namespace

void write_snapshot(std::ostream& out, const StateVector& psi, bool as_float) {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(psi.n_qubits()));
  put<std::uint32_t>(out, as_float ? 32U : 64U);
  for (const auto& a : psi.amplitudes()) {
    if (as_float) {
      put<float>(out, static_cast<float>(a.real()));
      put<float>(out, static_cast<float>(a.imag()));
    } else {
      put<double>(out, a.real());
      put<double>(out, a.imag());
    }
  }
  if (!out) throw StateError("failed to write state snapshot");
}

StateVector read_snapshot(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw StateError("not a state snapshot (bad magic)");
  const auto n = get<std::uint32_t>(in);
  const auto bits = get<std::uint32_t>(in);
  if (bits != 32 && bits != 64) throw StateError("state snapshot has unknown precision flag");
  check_qubits(n);
  std::vector<cplx> amp(std::size_t{1} << n);
  for (auto& a : amp) {
    if (bits == 32) {
      const float re = get<float>(in);
      const float im = get<float>(in);
      a = {re, im};
    } else {
      const double re = get<double>(in);
      const double im = get<double>(in);
      a = {re, im};
    }
  }
  return StateVector::from_amplitudes(n, std::move(amp));
}

}  // namespace spinvqe
