#include <bit>
#include <stdexcept>

#include "spinvqe/scf.hpp"

namespace spinvqe {

namespace {

inline double jw_sign(std::uint64_t b, std::size_t j) {
  return (std::popcount(b & ((std::uint64_t{1} << j) - 1)) & 1) ? -1.0 : 1.0;
}

}  // namespace

template <typename Real>
RdmPair compute_rdms(const BasicStateVector<Real>& psi) {
  const std::size_t n = psi.n_qubits();
  if (n % 2 != 0) throw StateError("compute_rdms: odd register size");
  const std::size_t m = n / 2;
  const auto dim = static_cast<Eigen::Index>(psi.dimension());
  const auto amp = psi.amplitudes();

  // columns: a_j |psi>
  Eigen::MatrixXcd one(dim, static_cast<Eigen::Index>(n));
  one.setZero();
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t bj = std::uint64_t{1} << j;
    for (std::uint64_t b = 0; b < psi.dimension(); ++b)
      if (b & bj) one(static_cast<Eigen::Index>(b ^ bj), static_cast<Eigen::Index>(j)) = jw_sign(b, j) * cplx(amp[b]);
  }

  // columns: a_y a_x |psi> for x < y
  std::vector<std::vector<std::ptrdiff_t>> pair_col(n, std::vector<std::ptrdiff_t>(n, -1));
  std::size_t n_pairs = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) pair_col[x][y] = static_cast<std::ptrdiff_t>(n_pairs++);
  Eigen::MatrixXcd two(dim, static_cast<Eigen::Index>(n_pairs));
  two.setZero();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const std::uint64_t by = std::uint64_t{1} << y;
      const auto col = pair_col[x][y];
      for (std::uint64_t b = 0; b < psi.dimension(); ++b)
        if (b & by) two(static_cast<Eigen::Index>(b ^ by), col) = jw_sign(b, y) * one(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(x));
    }

  const Eigen::MatrixXcd d1 = one.adjoint() * one;
  const Eigen::MatrixXcd d2 = two.adjoint() * two;

  // a_S a_Q |psi> as (column, sign)
  auto pair_of = [&](std::size_t q, std::size_t s) -> std::pair<std::ptrdiff_t, double> {
    if (q == s) return {-1, 0.0};
    return q < s ? std::pair{pair_col[q][s], 1.0} : std::pair{pair_col[s][q], -1.0};
  };

  RdmPair out;
  out.gamma = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  out.Gamma = Tensor4(m);
  constexpr Spin spins[2] = {Spin::alpha, Spin::beta};
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (Spin s : spins)
        out.gamma(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) +=
            d1(static_cast<Eigen::Index>(spin_orbital(p, s)), static_cast<Eigen::Index>(spin_orbital(q, s))).real();

  // <a+_P a+_R a_S a_Q> = <a_R a_P psi | a_S a_Q psi>
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          double acc = 0.0;
          for (Spin sig : spins)
            for (Spin tau : spins) {
              const auto [bra, sb] = pair_of(spin_orbital(p, sig), spin_orbital(r, tau));
              const auto [ket, sk] = pair_of(spin_orbital(q, sig), spin_orbital(s, tau));
              if (bra < 0 || ket < 0) continue;
              acc += sb * sk * d2(bra, ket).real();
            }
          out.Gamma(p, q, r, s) = acc;
        }
  return out;
}

template RdmPair compute_rdms(const BasicStateVector<float>&);
template RdmPair compute_rdms(const BasicStateVector<double>&);

RdmPair sa_rdms(const std::vector<RdmPair>& rdms, const std::vector<double>& weights) {
  if (rdms.empty() || rdms.size() != weights.size()) throw std::invalid_argument("sa_rdms: size mismatch");
  const auto m = rdms.front().gamma.rows();
  RdmPair out;
  out.gamma = Eigen::MatrixXd::Zero(m, m);
  out.Gamma = Tensor4(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < rdms.size(); ++i) {
    if (rdms[i].gamma.rows() != m || rdms[i].Gamma.dim() != static_cast<std::size_t>(m))
      throw std::invalid_argument("sa_rdms: dimension mismatch");
    out.gamma += weights[i] * rdms[i].gamma;
    auto& dst = out.Gamma.data();
    const auto& src = rdms[i].Gamma.data();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += weights[i] * src[k];
  }
  return out;
}

Eigen::MatrixXd orbital_gradient(const ActiveSpaceIntegrals& ints, const RdmPair& rdms) {
  const std::size_t m = ints.n_orb;
  const auto mi = static_cast<Eigen::Index>(m);
  if (rdms.gamma.rows() != mi || rdms.gamma.cols() != mi || rdms.Gamma.dim() != m)
    throw std::invalid_argument("orbital_gradient: RDM dimensions differ from the integrals");
  const Eigen::MatrixXd& h = ints.h;
  const Eigen::MatrixXd& d = rdms.gamma;

  // one-electron: Z1 = h d^T, Z2 = h^T d
  const Eigen::MatrixXd z = h * d.transpose() + h.transpose() * d;

  // two-electron: one term per transformed index of g
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(mi, mi);
  const Tensor4& g = ints.g;
  const Tensor4& G = rdms.Gamma;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t v = 0; v < m; ++v) {
      double acc = 0.0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t c = 0; c < m; ++c)
            acc += g(x, a, b, c) * G(v, a, b, c) + g(a, x, b, c) * G(a, v, b, c) + g(a, b, x, c) * G(a, b, v, c) +
                   g(a, b, c, x) * G(a, b, c, v);
      y(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(v)) = acc;
    }

  return (z - z.transpose()) + 0.5 * (y - y.transpose());
}

}  // namespace spinvqe
