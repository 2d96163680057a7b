#include "spinvqe/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>

namespace spinvqe {

namespace {

cplx reference_overlap(const ReferenceState& a, const ReferenceState& b) {
  cplx acc{};
  for (const auto& [ba, ca] : a.kets)
    for (const auto& [bb, cb] : b.kets)
      if (ba == bb) acc += std::conj(ca) * cb;
  return acc;
}

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void SaVqeProblem::validate() const {
  const std::size_t n = hamiltonian.n_qubits();
  if (states.empty()) throw std::invalid_argument("SA-VQE problem has no states");
  if (program.n_qubits != n) throw std::invalid_argument("ansatz and Hamiltonian register sizes differ");
  if (!(tolerance > 0.0)) throw std::invalid_argument("VQE tolerance must be positive");
  if (window == 0 || max_steps == 0) throw std::invalid_argument("VQE window and max_steps must be positive");
  double total = 0.0;
  for (const auto& s : states) {
    if (s.reference.n_qubits() != n) throw std::invalid_argument("reference register differs from Hamiltonian");
    if (s.reference.n_electrons != states.front().reference.n_electrons)
      throw std::invalid_argument("references carry different electron counts");
    if (!(s.weight >= 0.0 && s.weight <= 1.0)) throw std::invalid_argument("state weights must lie in [0, 1]");
    double norm = 0.0;
    for (const auto& ket : s.reference.kets) norm += std::norm(ket.second);
    if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("reference state is not normalized");
    total += s.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("state weights must sum to 1");
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      if (std::abs(reference_overlap(states[i].reference, states[j].reference)) > 1e-12)
        throw std::invalid_argument("reference states are not mutually orthogonal");
}

NonFiniteEnergy::NonFiniteEnergy(std::uint64_t step, std::vector<TraceRow> trace)
    : std::runtime_error("non-finite objective at step " + std::to_string(step)), step_(step),
      trace_(std::move(trace)) {}

SaVqeEvaluator::SaVqeEvaluator(const SaVqeProblem& problem, Precision precision, Reduction reduction)
    : problem_(&problem), precision_(precision), reduction_(reduction) {
  problem.validate();
  h_ = SparseOperator::from_pauli_sum(problem.hamiltonian);
  const SpinObservables obs = build_spin_observables(problem.hamiltonian.n_qubits() / 2);
  s2_ = SparseOperator::from_pauli_sum(obs.s2);
  sz_ = SparseOperator::from_pauli_sum(obs.sz);
  n_ = SparseOperator::from_pauli_sum(obs.number);
}

template <typename Real>
double SaVqeEvaluator::state_gradient(std::size_t i, std::span<const double> theta, double weight,
                                      std::vector<double>& grad, BasicStateVector<Real>* final_state) const {
  const AnsatzProgram& prog = problem_->program;
  BasicStateVector<Real> psi = prepare_state<Real>(problem_->states[i].reference);
  apply_ansatz(psi, prog, theta);
  const double e = h_.expectation(psi, reduction_);
  if (final_state) *final_state = psi;
  if (grad.empty()) return e;

  BasicStateVector<Real> lambda;
  h_.apply(psi, lambda);
  for (std::size_t g = prog.size(); g-- > 0;) {
    const ExcitationGenerator& gen = prog.generators[g];
    const double t = theta[prog.slot[g]];
    grad[prog.slot[g]] += weight * excitation_gradient_term(lambda, psi, gen);
    apply_excitation_exponential(psi, gen, -t);
    apply_excitation_exponential(lambda, gen, -t);
  }
  return e;
}

std::pair<double, std::vector<double>> SaVqeEvaluator::energy(std::span<const double> theta) const {
  std::vector<double> none;
  std::vector<double> energies(problem_->states.size());
  double avg = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    energies[i] = precision_ == Precision::f64
                      ? state_gradient<double>(i, theta, 0.0, none, nullptr)
                      : state_gradient<float>(i, theta, 0.0, none, nullptr);
    avg += problem_->states[i].weight * energies[i];
  }
  return {avg, energies};
}

std::pair<double, std::vector<double>> SaVqeEvaluator::gradient(std::span<const double> theta,
                                                                std::vector<double>& grad) const {
  TraceRow row;
  grad = gradient_with_monitors(theta, row, false);
  return {row.e_avg, row.energies};
}

std::vector<double> SaVqeEvaluator::gradient_with_monitors(std::span<const double> theta, TraceRow& row,
                                                           bool monitor) const {
  if (theta.size() != n_parameters())
    throw std::invalid_argument("expected " + std::to_string(n_parameters()) + " parameters");
  const std::size_t n_states = problem_->states.size();
  std::vector<double> grad(n_parameters(), 0.0);
  row.energies.assign(n_states, 0.0);
  row.e_avg = 0.0;
  row.s2.clear();
  row.sz.clear();
  row.number.clear();
  row.max_overlap = 0.0;

  auto run = [&]<typename Real>(std::vector<BasicStateVector<Real>>& finals) {
    finals.resize(n_states);
    for (std::size_t i = 0; i < n_states; ++i) {
      const double w = problem_->states[i].weight;
      row.energies[i] = state_gradient<Real>(i, theta, w, grad, &finals[i]);
      row.e_avg += w * row.energies[i];
    }
    if (!monitor) return;
    for (const auto& psi : finals) {
      row.s2.push_back(s2_.expectation(psi, reduction_));
      row.sz.push_back(sz_.expectation(psi, reduction_));
      row.number.push_back(n_.expectation(psi, reduction_));
    }
    for (std::size_t i = 0; i < n_states; ++i)
      for (std::size_t j = i + 1; j < n_states; ++j)
        row.max_overlap = std::max(row.max_overlap, std::abs(inner_product(finals[i], finals[j], reduction_)));
  };
  if (precision_ == Precision::f64) {
    std::vector<StateVector> finals;
    run(finals);
  } else {
    std::vector<StateVectorF32> finals;
    run(finals);
  }
  return grad;
}

StateVector SaVqeEvaluator::evolved_state(std::size_t i, std::span<const double> theta) const {
  StateVector psi = prepare_state<double>(problem_->states.at(i).reference);
  apply_ansatz(psi, problem_->program, theta);
  return psi;
}

std::pair<double, std::vector<double>> sa_energy(std::span<const double> theta, const SaVqeProblem& problem) {
  return SaVqeEvaluator(problem).energy(theta);
}

std::vector<double> sa_gradient(std::span<const double> theta, const SaVqeProblem& problem) {
  std::vector<double> grad;
  SaVqeEvaluator(problem).gradient(theta, grad);
  return grad;
}

VqeResult run_vqe(const SaVqeProblem& problem, const VqeOptions& options) {
  options.schedule.validate();
  const SaVqeEvaluator eval(problem, options.precision, options.reduction);
  const std::size_t n_par = eval.n_parameters();

  std::vector<double> theta = options.theta0.empty() ? std::vector<double>(n_par, 0.0) : options.theta0;
  if (theta.size() != n_par) throw std::invalid_argument("initial parameter vector has the wrong length");

  const AdamParams& adam = options.adam;
  std::vector<double> m(n_par, 0.0), v(n_par, 0.0);
  double b1_power = 1.0, b2_power = 1.0;

  VqeResult result;
  result.e_avg = std::numeric_limits<double>::infinity();
  double previous = 0.0;
  std::size_t quiet = 0;

  for (std::size_t t = 0; t < problem.max_steps; ++t) {
    TraceRow row;
    const std::vector<double> grad = eval.gradient_with_monitors(theta, row, options.monitor);
    row.step = options.step_offset + t;
    row.lr = schedule_rate(t, options.schedule);
    const bool finite = std::isfinite(row.e_avg) && all_finite(grad);
    result.trace.push_back(std::move(row));
    if (!finite) throw NonFiniteEnergy(options.step_offset + t, std::move(result.trace));

    const TraceRow& cur = result.trace.back();
    result.steps = t + 1;
    if (cur.e_avg < result.e_avg) {
      result.e_avg = cur.e_avg;
      result.energies = cur.energies;
      result.theta = theta;
    }
    if (t > 0) {
      quiet = std::abs(cur.e_avg - previous) <= problem.tolerance ? quiet + 1 : 0;
      if (quiet >= problem.window) {
        result.converged = true;
        break;
      }
    }
    previous = cur.e_avg;

    b1_power *= adam.beta1;
    b2_power *= adam.beta2;
    for (std::size_t k = 0; k < n_par; ++k) {
      m[k] = adam.beta1 * m[k] + (1.0 - adam.beta1) * grad[k];
      v[k] = adam.beta2 * v[k] + (1.0 - adam.beta2) * grad[k] * grad[k];
      const double m_hat = m[k] / (1.0 - b1_power);
      const double v_hat = v[k] / (1.0 - b2_power);
      theta[k] -= cur.lr * m_hat / (std::sqrt(v_hat) + adam.eps);
    }
  }
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace, const std::vector<int>& spins) {
  std::map<int, std::size_t> column;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] < 0 || spins[i] > 2) throw std::invalid_argument("trace columns exist for spins 0, 1, 2 only");
    if (!column.emplace(spins[i], i).second) throw std::invalid_argument("duplicate spin in trace columns");
  }
  out << "step,lr,E_avg,E_S0,E_S1,E_S2,S2_S0,S2_S1,S2_S2\n";
  out << std::setprecision(17);
  for (const TraceRow& r : trace) {
    out << r.step << ',' << r.lr << ',' << r.e_avg;
    for (int s = 0; s <= 2; ++s) {
      out << ',';
      const auto it = column.find(s);
      if (it != column.end() && it->second < r.energies.size()) out << r.energies[it->second];
    }
    for (int s = 0; s <= 2; ++s) {
      out << ',';
      const auto it = column.find(s);
      if (it != column.end() && it->second < r.s2.size()) out << r.s2[it->second];
    }
    out << '\n';
  }
}

}  // namespace spinvqe
