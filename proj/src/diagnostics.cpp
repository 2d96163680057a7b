#include "spinvqe/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinvqe {

const char* const kZs1Caveat =
    "Z_s1 is a weaker indicator when the active space holds unequal numbers of electrons and orbitals; "
    "values are not adjusted for this.";

namespace {

constexpr double kClip = 1e-12;

std::size_t orbital_count(std::size_t n_qubits) {
  if (n_qubits % 2 != 0) throw StateError("orbital diagnostics need an even register");
  return n_qubits / 2;
}

std::vector<double> density_eigenvalues(const Eigen::MatrixXcd& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

template <typename Real>
std::array<double, 4> one_orbital_eigenvalues(const BasicStateVector<Real>& psi, std::size_t orbital) {
  if (orbital >= orbital_count(psi.n_qubits())) throw StateError("orbital index out of range");
  const std::uint64_t a = std::uint64_t{1} << (2 * orbital);
  const std::uint64_t b = a << 1;
  double na = 0.0, nb = 0.0, nab = 0.0;
  const auto amp = psi.amplitudes();
  for (std::uint64_t k = 0; k < amp.size(); ++k) {
    const double p = std::norm(std::complex<double>(amp[k]));
    if (k & a) na += p;
    if (k & b) nb += p;
    if ((k & a) && (k & b)) nab += p;
  }
  return {1.0 - na - nb + nab, na - nab, nb - nab, nab};
}

double entropy(const std::vector<double>& probabilities) {
  double s = 0.0;
  for (double w : probabilities) {
    if (w < -kClip || w > 1.0 + kClip)
      throw std::domain_error("density eigenvalue " + std::to_string(w) + " outside [0, 1]");
    w = std::clamp(w, 0.0, 1.0);
    if (w > 0.0) s -= w * std::log(w);
  }
  return s;
}

template <typename Real>
std::vector<double> one_orbital_entropies(const BasicStateVector<Real>& psi) {
  const std::size_t m = orbital_count(psi.n_qubits());
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto w = one_orbital_eigenvalues(psi, i);
    s[i] = entropy({w.begin(), w.end()});
  }
  return s;
}

template <typename Real>
double z_s1(const BasicStateVector<Real>& psi) {
  const std::vector<double> s = one_orbital_entropies(psi);
  double total = 0.0;
  for (double v : s) total += v;
  return total / (static_cast<double>(s.size()) * std::log(4.0));
}

template <typename Real>
double two_orbital_entropy(const BasicStateVector<Real>& psi, std::size_t i, std::size_t j) {
  const std::size_t pair[2] = {i, j};
  return entropy(density_eigenvalues(reduced_density(psi, pair)));
}

template <typename Real>
Eigen::MatrixXd mutual_information(const BasicStateVector<Real>& psi) {
  const std::size_t m = orbital_count(psi.n_qubits());
  if (m < 2) throw StateError("mutual information needs at least two orbitals");
  const std::vector<double> s = one_orbital_entropies(psi);
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(mi, mi);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = 0.5 * (s[i] + s[j] - two_orbital_entropy(psi, i, j));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  return out;
}

template <typename Real>
DiagnosticsReport diagnose(const BasicStateVector<Real>& psi, std::string label) {
  DiagnosticsReport r;
  r.label = std::move(label);
  r.s1 = one_orbital_entropies(psi);
  double total = 0.0;
  for (double v : r.s1) total += v;
  r.z_s1 = total / (static_cast<double>(r.s1.size()) * std::log(4.0));
  r.mutual_information = r.s1.size() >= 2 ? mutual_information(psi) : Eigen::MatrixXd(Eigen::MatrixXd::Zero(1, 1));
  r.regime = r.z_s1 < 0.1 ? "single-reference" : "multi-reference";
  return r;
}

#define SPINVQE_INSTANTIATE(R)                                                                         \
  template std::array<double, 4> one_orbital_eigenvalues(const BasicStateVector<R>&, std::size_t); \
  template std::vector<double> one_orbital_entropies(const BasicStateVector<R>&);                  \
  template double z_s1(const BasicStateVector<R>&);                                                \
  template double two_orbital_entropy(const BasicStateVector<R>&, std::size_t, std::size_t);       \
  template Eigen::MatrixXd mutual_information(const BasicStateVector<R>&);                         \
  template DiagnosticsReport diagnose(const BasicStateVector<R>&, std::string);

SPINVQE_INSTANTIATE(float)
SPINVQE_INSTANTIATE(double)

#undef SPINVQE_INSTANTIATE

}  // namespace spinvqe
