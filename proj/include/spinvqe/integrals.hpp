#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinvqe {

/// Dense M^4 tensor of real two-electron integrals in chemists' notation.
///
/// Element (p,q,r,s) multiplies a+_p a+_r a_s a_q in the Hamiltonian, i.e. the
/// pair (p,q) belongs to electron 1 and (r,s) to electron 2.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return data_[index(p, q, r, s)];
  }
  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return data_[index(p, q, r, s)];
  }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  std::size_t index(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const noexcept {
    return ((p * n_ + q) * n_ + r) * n_ + s;
  }

  bool operator==(const Tensor4&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Calls f(i,j,k,l) for each of the 8 index tuples related to (p,q,r,s) by
/// the real-orbital permutational symmetry of (pq|rs). Duplicates are possible.
template <typename F>
void for_each_eri_image(std::size_t p, std::size_t q, std::size_t r, std::size_t s, F&& f) {
  f(p, q, r, s);
  f(q, p, r, s);
  f(p, q, s, r);
  f(q, p, s, r);
  f(r, s, p, q);
  f(s, r, p, q);
  f(r, s, q, p);
  f(s, r, q, p);
}

/// Effective one- and two-electron integrals of an active space.
struct ActiveSpaceIntegrals {
  std::size_t n_orb = 0;
  int n_alpha = 0;
  int n_beta = 0;
  /// Nuclear repulsion plus the frozen inactive-shell energy (Hartree).
  double core_energy = 0.0;
  Eigen::MatrixXd h;
  Tensor4 g;
  /// Stored when present in the source file; not used otherwise.
  std::vector<int> orbsym;
  int isym = 1;

  int n_electrons() const noexcept { return n_alpha + n_beta; }
  std::size_t n_qubits() const noexcept { return 2 * n_orb; }

  /// Zero integrals of the given shape.
  static ActiveSpaceIntegrals zeros(std::size_t n_orb, int n_alpha, int n_beta);
};

/// Antisymmetric generator of a real orbital rotation. Only the strictly
/// upper triangle is stored, so kappa^T = -kappa holds by construction.
class OrbitalRotation {
 public:
  OrbitalRotation() = default;
  explicit OrbitalRotation(std::size_t n_orb);
  /// Takes the strict upper triangle of `kappa`; the lower triangle is ignored.
  static OrbitalRotation from_upper(const Eigen::MatrixXd& kappa);

  std::size_t n_orb() const noexcept { return n_; }
  std::size_t n_parameters() const noexcept { return upper_.size(); }

  /// kappa_pq for p < q. Indices with p > q return -kappa_qp; p == q is 0.
  double get(std::size_t p, std::size_t q) const;
  void set(std::size_t p, std::size_t q, double value);

  Eigen::MatrixXd matrix() const;
  /// exp(kappa), orthogonal with determinant +1.
  Eigen::MatrixXd unitary() const;

  OrbitalRotation operator-() const;

 private:
  std::size_t upper_index(std::size_t p, std::size_t q) const;

  std::size_t n_ = 0;
  std::vector<double> upper_;
};

/// Raised when integrals fail a structural check (dimension, symmetry, counts).
class IntegralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed FCIDUMP input. The message names the offending line.
class FcidumpParseError : public std::runtime_error {
 public:
  FcidumpParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

ActiveSpaceIntegrals parse_fcidump(std::istream& in);
ActiveSpaceIntegrals parse_fcidump(std::string_view text);
ActiveSpaceIntegrals read_fcidump(const std::string& path);

/// Writes the symmetry-unique entries whose magnitude exceeds `threshold`.
void write_fcidump(std::ostream& out, const ActiveSpaceIntegrals& ints, double threshold = 1e-14);

/// Throws IntegralError on a broken invariant: shapes, h symmetry, 8-fold
/// symmetry of g (to `tolerance`), or electron counts.
void validate(const ActiveSpaceIntegrals& ints, double tolerance = 0.0);

/// sum_pq h_pq gamma_pq + 1/2 sum_pqrs g_pqrs Gamma_pqrs + core_energy.
/// `Gamma(p,q,r,s)` holds <a+_p a+_r a_s a_q> summed over both spin labels.
double energy_from_rdms(const ActiveSpaceIntegrals& ints, const Eigen::MatrixXd& gamma,
                        const Tensor4& Gamma);

/// Applies the orbital basis change U = exp(kappa): h' = U^T h U and the
/// same transform on every index of g, one index at a time.
ActiveSpaceIntegrals rotate_integrals(const ActiveSpaceIntegrals& ints, const OrbitalRotation& rot);
ActiveSpaceIntegrals rotate_integrals(const ActiveSpaceIntegrals& ints, const Eigen::MatrixXd& u);

/// exp of a real antisymmetric matrix via the Hermitian eigendecomposition of i*A.
Eigen::MatrixXd expm_antisymmetric(const Eigen::MatrixXd& a);

}  // namespace spinvqe
