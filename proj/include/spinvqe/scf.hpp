#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "spinvqe/integrals.hpp"
#include "spinvqe/statevector.hpp"
#include "spinvqe/vqe.hpp"

namespace spinvqe {

/// Spin-summed reduced density matrices over spatial orbitals.
/// gamma(p,q) = sum_s <a+_ps a_qs>; Gamma(p,q,r,s) = sum_{st} <a+_ps a+_rt a_st a_qs>.
struct RdmPair {
  Eigen::MatrixXd gamma;
  Tensor4 Gamma;
};

template <typename Real>
RdmPair compute_rdms(const BasicStateVector<Real>& psi);

/// Element-wise weighted average.
RdmPair sa_rdms(const std::vector<RdmPair>& rdms, const std::vector<double>& weights);

/// dE/dkappa_pq at kappa = 0 of energy_from_rdms(rotate_integrals(ints, kappa), rdms)
/// with the densities held fixed. Antisymmetric; entry (p,q), p < q, is the
/// derivative with respect to the stored parameter kappa_pq.
Eigen::MatrixXd orbital_gradient(const ActiveSpaceIntegrals& ints, const RdmPair& rdms);

struct OoOptions {
  bool enabled = true;
  std::size_t max_macros = 100;
  double step_size = 0.1;
  std::size_t max_halvings = 20;
  double energy_tolerance = 1e-7;
  double grad_tolerance = 1e-5;
};

struct MacroTrace {
  std::size_t macro = 0;
  double e_avg_pre = 0.0;
  double e_avg_post = 0.0;
  double grad_max = 0.0;
  double kappa_step_norm = 0.0;
};

/// Ansatz, references and VQE controls; the Hamiltonian comes from the integrals.
struct OoProblem {
  ActiveSpaceIntegrals integrals;
  std::vector<TargetState> states;
  AnsatzProgram program;
  double vqe_tolerance = 1e-7;
  std::size_t vqe_window = 50;
  std::size_t vqe_max_steps = 50000;
};

struct OoResult {
  VqeResult vqe;
  std::vector<MacroTrace> macros;
  /// Trace rows of every VQE run, with a global step counter.
  std::vector<TraceRow> trace;
  ActiveSpaceIntegrals integrals;
  Eigen::MatrixXd u_total;
  OrbitalRotation kappa_total;
  std::vector<RdmPair> rdms;
  bool converged = false;
  bool line_search_failed = false;
};

/// Alternates VQE to tolerance with one backtracking gradient step on the
/// orbitals until both the macro energy change and the orbital gradient are
/// small. With options.enabled false, performs a single VQE.
OoResult run_oo_vqe(const OoProblem& problem, const OoOptions& options, const VqeOptions& vqe_options);

void write_macro_csv(std::ostream& out, const std::vector<MacroTrace>& macros);

}  // namespace spinvqe
