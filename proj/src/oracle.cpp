#include "spinvqe/oracle.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "spinvqe/jordan_wigner.hpp"

namespace spinvqe {

namespace {

constexpr std::uint64_t kAlphaMask = 0x5555555555555555ULL;
constexpr cplx kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

using Triplets = std::vector<Eigen::Triplet<double>>;

Triplets restricted_triplets(const PauliSum& op, const std::vector<std::uint64_t>& basis) {
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, cplx>>> groups;
  for (const auto& [letters, c] : op.terms())
    groups[letters.x].emplace_back(letters.z, c * kIPow[std::popcount(letters.x & letters.z) % 4]);

  Triplets out;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::uint64_t b = basis[col];
    for (const auto& [x, zs] : groups) {
      const std::uint64_t target = b ^ x;
      const auto it = std::lower_bound(basis.begin(), basis.end(), target);
      if (it == basis.end() || *it != target) continue;
      cplx v{};
      for (const auto& [z, c] : zs) v += ((std::popcount(z & b) & 1) ? -1.0 : 1.0) * c;
      if (std::abs(v.imag()) > 1e-12) throw OracleError("operator has complex matrix elements in this basis");
      if (v.real() != 0.0) out.emplace_back(static_cast<Eigen::Index>(it - basis.begin()),
                                            static_cast<Eigen::Index>(col), v.real());
    }
  }
  return out;
}

Eigen::SparseMatrix<double> restricted_sparse(const PauliSum& op, const std::vector<std::uint64_t>& basis) {
  const Triplets t = restricted_triplets(op, basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Rotates degenerate eigenvector clusters so that S^2 is diagonal in each.
void resolve_spin(SectorSpectrum& spec, const Eigen::SparseMatrix<double>& s2) {
  const std::size_t k = spec.eigenvalues.size();
  spec.s2.assign(k, 0.0);
  std::size_t start = 0;
  while (start < k) {
    std::size_t end = start + 1;
    while (end < k && spec.eigenvalues[end] - spec.eigenvalues[end - 1] <= 1e-8) ++end;
    const auto width = static_cast<Eigen::Index>(end - start);
    auto block = spec.eigenvectors.middleCols(static_cast<Eigen::Index>(start), width);
    const Eigen::MatrixXd s2v = s2 * block;
    Eigen::MatrixXd c = block.transpose() * s2v;
    c = 0.5 * (c + c.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    const Eigen::MatrixXd rotated = block * es.eigenvectors();
    block = rotated;
    for (Eigen::Index i = 0; i < width; ++i) spec.s2[start + static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    start = end;
  }
}

}  // namespace

std::vector<std::uint64_t> sector_basis(std::size_t n_qubits, int n_electrons, int two_sz) {
  if (n_qubits % 2 != 0 || n_qubits > 62) throw OracleError("sector_basis: unsupported register size");
  if ((n_electrons + two_sz) % 2 != 0) throw OracleError("sector_basis: parity of N and 2 S_z differ");
  const int n_alpha = (n_electrons + two_sz) / 2;
  const int n_beta = (n_electrons - two_sz) / 2;
  const int m = static_cast<int>(n_qubits / 2);
  if (n_alpha < 0 || n_beta < 0 || n_alpha > m || n_beta > m)
    throw OracleError("sector (N=" + std::to_string(n_electrons) + ", 2Sz=" + std::to_string(two_sz) + ") is empty");
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t b = 0; b < dim; ++b)
    if (std::popcount(b & kAlphaMask) == n_alpha && std::popcount(b & ~kAlphaMask) == n_beta) out.push_back(b);
  return out;
}

Eigen::MatrixXd restricted_matrix(const PauliSum& op, const std::vector<std::uint64_t>& basis) {
  return Eigen::MatrixXd(restricted_sparse(op, basis));
}

LanczosResult lanczos_lowest(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                             std::size_t dim, std::size_t n_roots, std::size_t max_krylov, double tolerance) {
  if (dim == 0) throw OracleError("lanczos: empty space");
  n_roots = std::min(n_roots, dim);
  const std::size_t kmax = std::min(max_krylov, dim);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd v(d, static_cast<Eigen::Index>(kmax));
  std::vector<double> alpha, beta;

  Eigen::VectorXd q(d);
  for (Eigen::Index i = 0; i < d; ++i) q(i) = 1.0 + 0.1 * std::sin(static_cast<double>(i) + 1.0);
  q.normalize();

  Eigen::VectorXd w(d);
  LanczosResult res;
  for (std::size_t j = 0; j < kmax; ++j) {
    v.col(static_cast<Eigen::Index>(j)) = q;
    apply(q, w);
    alpha.push_back(q.dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = v.leftCols(static_cast<Eigen::Index>(j + 1));
      w -= basis * (basis.transpose() * w);
    }
    const double b = w.norm();

    const auto k = static_cast<Eigen::Index>(j + 1);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    const bool exhausted = b < 1e-12 || j + 1 == kmax;
    if (j + 1 >= n_roots) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      bool done = exhausted;
      if (!done) {
        done = true;
        for (std::size_t r = 0; r < n_roots; ++r)
          if (std::abs(b * es.eigenvectors()(k - 1, static_cast<Eigen::Index>(r))) > tolerance) done = false;
      }
      if (done) {
        const std::size_t roots = std::min<std::size_t>(n_roots, static_cast<std::size_t>(k));
        res.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + roots);
        res.vectors = v.leftCols(k) * es.eigenvectors().leftCols(static_cast<Eigen::Index>(roots));
        return res;
      }
    }
    beta.push_back(b);
    q = w / b;
  }
  throw OracleError("lanczos: no convergence");
}

SectorSpectrum sector_spectrum(const PauliSum& hamiltonian, int n_electrons, int two_sz, const OracleLimits& limits) {
  const std::size_t n = hamiltonian.n_qubits();
  if (n > limits.iterative_qubits)
    throw OracleError("oracle cap exceeded: " + std::to_string(n) + " qubits (limit " +
                      std::to_string(limits.iterative_qubits) + ")");
  if (!hamiltonian.is_hermitian()) throw OracleError("oracle: Hamiltonian is not Hermitian");
  SectorSpectrum spec;
  spec.n_electrons = n_electrons;
  spec.two_sz = two_sz;
  spec.basis = sector_basis(n, n_electrons, two_sz);
  const Eigen::SparseMatrix<double> h = restricted_sparse(hamiltonian, spec.basis);

  if (n <= limits.dense_qubits && spec.basis.size() <= limits.dense_dimension) {
    Eigen::MatrixXd dense(h);
    dense = 0.5 * (dense + dense.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    spec.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    spec.eigenvectors = es.eigenvectors();
  } else {
    const LanczosResult lr = lanczos_lowest([&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = h * x; },
                                            spec.basis.size(), limits.iterative_roots);
    spec.eigenvalues = lr.values;
    spec.eigenvectors = lr.vectors;
  }
  const SpinObservables obs = build_spin_observables(n / 2);
  resolve_spin(spec, restricted_sparse(obs.s2, spec.basis));
  return spec;
}

double casci_energy(const ActiveSpaceIntegrals& ints, int n_electrons, int spin, const OracleLimits& limits) {
  const SectorSpectrum spec = sector_spectrum(build_qubit_hamiltonian(ints), n_electrons, 2 * spin, limits);
  const double target = spin * (spin + 1.0);
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
    if (std::abs(spec.s2[k] - target) <= 1e-6) return spec.eigenvalues[k];
  throw OracleError("no state with S=" + std::to_string(spin) + " found in the sector");
}

}  // namespace spinvqe
