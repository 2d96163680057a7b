#include "spinvqe/integrals.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <sstream>

namespace spinvqe {

ActiveSpaceIntegrals ActiveSpaceIntegrals::zeros(std::size_t n_orb, int n_alpha, int n_beta) {
  ActiveSpaceIntegrals ints;
  ints.n_orb = n_orb;
  ints.n_alpha = n_alpha;
  ints.n_beta = n_beta;
  ints.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_orb), static_cast<Eigen::Index>(n_orb));
  ints.g = Tensor4(n_orb);
  return ints;
}

// ---------------------------------------------------------------------------
// OrbitalRotation

OrbitalRotation::OrbitalRotation(std::size_t n_orb)
    : n_(n_orb), upper_(n_orb * (n_orb > 0 ? n_orb - 1 : 0) / 2, 0.0) {}

OrbitalRotation OrbitalRotation::from_upper(const Eigen::MatrixXd& kappa) {
  if (kappa.rows() != kappa.cols()) throw IntegralError("rotation generator must be square");
  OrbitalRotation rot(static_cast<std::size_t>(kappa.rows()));
  for (std::size_t p = 0; p < rot.n_; ++p)
    for (std::size_t q = p + 1; q < rot.n_; ++q)
      rot.set(p, q, kappa(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)));
  return rot;
}

std::size_t OrbitalRotation::upper_index(std::size_t p, std::size_t q) const {
  // row-major strict upper triangle
  return p * n_ - p * (p + 1) / 2 + (q - p - 1);
}

double OrbitalRotation::get(std::size_t p, std::size_t q) const {
  if (p >= n_ || q >= n_) throw IntegralError("rotation index out of range");
  if (p == q) return 0.0;
  if (p < q) return upper_[upper_index(p, q)];
  return -upper_[upper_index(q, p)];
}

void OrbitalRotation::set(std::size_t p, std::size_t q, double value) {
  if (p >= n_ || q >= n_ || p == q) throw IntegralError("rotation index out of range or diagonal");
  if (p < q)
    upper_[upper_index(p, q)] = value;
  else
    upper_[upper_index(q, p)] = -value;
}

Eigen::MatrixXd OrbitalRotation::matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = p + 1; q < n_; ++q) {
      const double v = upper_[upper_index(p, q)];
      k(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = v;
      k(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = -v;
    }
  }
  return k;
}

Eigen::MatrixXd OrbitalRotation::unitary() const { return expm_antisymmetric(matrix()); }

OrbitalRotation OrbitalRotation::operator-() const {
  OrbitalRotation out = *this;
  for (double& v : out.upper_) v = -v;
  return out;
}

Eigen::MatrixXd expm_antisymmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw IntegralError("expm_antisymmetric: matrix must be square");
  if (a.rows() == 0) return a;
  using cd = std::complex<double>;
  const Eigen::MatrixXcd herm = cd(0.0, 1.0) * a.cast<cd>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const Eigen::VectorXd& d = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  // A = -i H  =>  exp(A) = V exp(-i D) V^H
  Eigen::VectorXcd phases(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) phases(i) = std::exp(cd(0.0, -d(i)));
  const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
  return u.real();
}

// ---------------------------------------------------------------------------
// validation and contractions

void validate(const ActiveSpaceIntegrals& ints, double tolerance) {
  const std::size_t m = ints.n_orb;
  if (m == 0) throw IntegralError("active space has no orbitals");
  if (static_cast<std::size_t>(ints.h.rows()) != m || static_cast<std::size_t>(ints.h.cols()) != m)
    throw IntegralError("one-electron integral matrix has wrong shape");
  if (ints.g.dim() != m) throw IntegralError("two-electron tensor has wrong dimension");
  if (ints.n_alpha < 0 || ints.n_beta < 0) throw IntegralError("negative electron count");
  const int n = ints.n_electrons();
  if (n <= 0 || n > static_cast<int>(2 * m)) throw IntegralError("electron count outside (0, 2*NORB]");
  if (ints.n_alpha < ints.n_beta) throw IntegralError("n_alpha < n_beta");
  if (ints.n_alpha > static_cast<int>(m)) throw IntegralError("n_alpha exceeds NORB");

  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < p; ++q) {
      const auto ip = static_cast<Eigen::Index>(p);
      const auto iq = static_cast<Eigen::Index>(q);
      if (std::abs(ints.h(ip, iq) - ints.h(iq, ip)) > tolerance) {
        std::ostringstream msg;
        msg << "one-electron integrals not symmetric at (" << p << "," << q << ")";
        throw IntegralError(msg.str());
      }
    }
  }

  const Tensor4& g = ints.g;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          const double v = g(p, q, r, s);
          const double images[] = {g(q, p, r, s), g(p, q, s, r), g(q, p, s, r),
                                   g(r, s, p, q), g(s, r, p, q), g(r, s, q, p), g(s, r, q, p)};
          for (double w : images) {
            if (std::abs(v - w) > tolerance) {
              std::ostringstream msg;
              msg << "two-electron integrals break 8-fold symmetry at (" << p << "," << q << ","
                  << r << "," << s << ")";
              throw IntegralError(msg.str());
            }
          }
        }
}

double energy_from_rdms(const ActiveSpaceIntegrals& ints, const Eigen::MatrixXd& gamma,
                        const Tensor4& Gamma) {
  const std::size_t m = ints.n_orb;
  if (static_cast<std::size_t>(gamma.rows()) != m || static_cast<std::size_t>(gamma.cols()) != m ||
      Gamma.dim() != m)
    throw IntegralError("energy_from_rdms: RDM dimensions do not match the integrals");

  double one = 0.0;
  for (Eigen::Index p = 0; p < gamma.rows(); ++p)
    for (Eigen::Index q = 0; q < gamma.cols(); ++q) one += ints.h(p, q) * gamma(p, q);

  double two = 0.0;
  const auto& gd = ints.g.data();
  const auto& Gd = Gamma.data();
  for (std::size_t i = 0; i < gd.size(); ++i) two += gd[i] * Gd[i];

  return one + 0.5 * two + ints.core_energy;
}

ActiveSpaceIntegrals rotate_integrals(const ActiveSpaceIntegrals& ints, const OrbitalRotation& rot) {
  if (rot.n_orb() != ints.n_orb) throw IntegralError("rotate_integrals: dimension mismatch");
  if (rot.matrix().isZero(0.0)) return ints;
  return rotate_integrals(ints, rot.unitary());
}

ActiveSpaceIntegrals rotate_integrals(const ActiveSpaceIntegrals& ints, const Eigen::MatrixXd& u) {
  const std::size_t m = ints.n_orb;
  if (static_cast<std::size_t>(u.rows()) != m || static_cast<std::size_t>(u.cols()) != m)
    throw IntegralError("rotate_integrals: dimension mismatch");
  if (u.isIdentity(0.0)) return ints;

  ActiveSpaceIntegrals out = ints;
  out.h = u.transpose() * ints.h * u;
  // keep exact symmetry; the product is symmetric only up to rounding
  out.h = 0.5 * (out.h + out.h.transpose()).eval();

  // g'_{pqrs} = sum U_ap U_bq U_cr U_ds g_abcd, contracting one index per pass
  Tensor4 a = ints.g;
  Tensor4 b(m);
  auto pass = [&](auto&& get_src, auto&& set_dst) {
    for (std::size_t i0 = 0; i0 < m; ++i0)
      for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2)
          for (std::size_t t = 0; t < m; ++t) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k)
              acc += u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) * get_src(i0, i1, i2, k);
            set_dst(i0, i1, i2, t, acc);
          }
  };
  // index s
  pass([&](auto p, auto q, auto r, auto k) { return a(p, q, r, k); },
       [&](auto p, auto q, auto r, auto t, double v) { b(p, q, r, t) = v; });
  // index r
  pass([&](auto p, auto q, auto s, auto k) { return b(p, q, k, s); },
       [&](auto p, auto q, auto s, auto t, double v) { a(p, q, t, s) = v; });
  // index q
  pass([&](auto p, auto r, auto s, auto k) { return a(p, k, r, s); },
       [&](auto p, auto r, auto s, auto t, double v) { b(p, t, r, s) = v; });
  // index p
  pass([&](auto q, auto r, auto s, auto k) { return b(k, q, r, s); },
       [&](auto q, auto r, auto s, auto t, double v) { a(t, q, r, s) = v; });

  // average the 8 images of each symmetry class and write the same value to all
  Tensor4& g = out.g;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * m + q < r * m + s) continue;
          const double v = (a(p, q, r, s) + a(q, p, r, s) + a(p, q, s, r) + a(q, p, s, r) +
                            a(r, s, p, q) + a(s, r, p, q) + a(r, s, q, p) + a(s, r, q, p)) /
                           8.0;
          for_each_eri_image(p, q, r, s, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
            g(i, j, k, l) = v;
          });
        }
  return out;
}

}  // namespace spinvqe
