#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "spinvqe/ansatz.hpp"
#include "spinvqe/jordan_wigner.hpp"
#include "spinvqe/pauli.hpp"
#include "spinvqe/statevector.hpp"

namespace spinvqe {

/// Polynomial decay of the learning rate:
///   f(t) = I                                  t < B
///        = (I - E)(1 - (t - B)/T)^P + E       B <= t < B + T
///        = E                                  t >= B + T
struct ScheduleParams {
  double initial = 1e-2;
  double end = 1e-3;
  double boundary = 35000.0;
  double transition = 10000.0;
  double power = 2.0;

  void validate() const;
};

double schedule_rate(std::uint64_t t, const ScheduleParams& params);

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct TargetState {
  ReferenceState reference;
  double weight = 1.0;
};

struct SaVqeProblem {
  PauliSum hamiltonian;
  std::vector<TargetState> states;
  AnsatzProgram program;
  /// Converged once `window` consecutive |dE_avg| are at most `tolerance`.
  double tolerance = 1e-7;
  std::size_t window = 50;
  std::size_t max_steps = 50000;

  /// Throws std::invalid_argument on inconsistent sizes, weights or references.
  void validate() const;
};

enum class Precision { f64, f32 };

struct VqeOptions {
  ScheduleParams schedule;
  AdamParams adam;
  Precision precision = Precision::f64;
  Reduction reduction = Reduction::deterministic;
  /// Starting parameters; empty means zeros.
  std::vector<double> theta0;
  /// Measure <S^2>, <S_z>, <N> and pairwise overlaps every step.
  bool monitor = true;
  /// Offset added to the step column of the trace (for runs spanning macros).
  std::uint64_t step_offset = 0;
};

struct TraceRow {
  std::uint64_t step = 0;
  double lr = 0.0;
  double e_avg = 0.0;
  std::vector<double> energies;
  std::vector<double> s2;
  std::vector<double> sz;
  std::vector<double> number;
  /// max_{i<j} |<Phi_i(theta)|Phi_j(theta)>|
  double max_overlap = 0.0;
};

struct VqeResult {
  /// Parameters of the lowest E_avg seen, with its energies.
  std::vector<double> theta;
  double e_avg = 0.0;
  std::vector<double> energies;
  std::vector<TraceRow> trace;
  std::size_t steps = 0;
  bool converged = false;
};

/// Raised when the objective becomes NaN or infinite. Carries the trace so far.
class NonFiniteEnergy : public std::runtime_error {
 public:
  NonFiniteEnergy(std::uint64_t step, std::vector<TraceRow> trace);
  std::uint64_t step() const noexcept { return step_; }
  const std::vector<TraceRow>& trace() const noexcept { return trace_; }

 private:
  std::uint64_t step_;
  std::vector<TraceRow> trace_;
};

/// Energy and gradient of the state-averaged objective for a fixed problem.
/// Operators are compiled once; evaluation is reentrant for distinct outputs.
class SaVqeEvaluator {
 public:
  explicit SaVqeEvaluator(const SaVqeProblem& problem, Precision precision = Precision::f64,
                          Reduction reduction = Reduction::deterministic);

  std::size_t n_parameters() const noexcept { return problem_->program.n_parameters; }

  /// (E_avg, per-state energies)
  std::pair<double, std::vector<double>> energy(std::span<const double> theta) const;

  /// dE_avg/dtheta by reverse accumulation; also returns the energies.
  std::pair<double, std::vector<double>> gradient(std::span<const double> theta, std::vector<double>& grad) const;

  /// Gradient plus per-state monitors filled into `row`.
  std::vector<double> gradient_with_monitors(std::span<const double> theta, TraceRow& row, bool monitor) const;

  /// Evolved state U(theta)|Phi_i>.
  StateVector evolved_state(std::size_t i, std::span<const double> theta) const;

 private:
  template <typename Real>
  double state_gradient(std::size_t i, std::span<const double> theta, double weight, std::vector<double>& grad,
                        BasicStateVector<Real>* final_state) const;

  const SaVqeProblem* problem_;
  Precision precision_;
  Reduction reduction_;
  SparseOperator h_;
  SparseOperator s2_, sz_, n_;
};

std::pair<double, std::vector<double>> sa_energy(std::span<const double> theta, const SaVqeProblem& problem);
std::vector<double> sa_gradient(std::span<const double> theta, const SaVqeProblem& problem);

VqeResult run_vqe(const SaVqeProblem& problem, const VqeOptions& options = {});

/// CSV with columns step, lr, E_avg, E_S0, E_S1, E_S2, S2_S0, S2_S1, S2_S2.
/// `spins[i]` is the spin of state i; columns for absent spins stay empty.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace, const std::vector<int>& spins);

}  // namespace spinvqe
