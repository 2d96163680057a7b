#include "spinvqe/scf.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace spinvqe {

namespace {

SaVqeProblem make_vqe_problem(const OoProblem& problem, const ActiveSpaceIntegrals& ints) {
  SaVqeProblem p;
  p.hamiltonian = build_qubit_hamiltonian(ints);
  p.states = problem.states;
  p.program = problem.program;
  p.tolerance = problem.vqe_tolerance;
  p.window = problem.vqe_window;
  p.max_steps = problem.vqe_max_steps;
  return p;
}

std::vector<RdmPair> state_rdms(const SaVqeProblem& vp, const std::vector<double>& theta) {
  const SaVqeEvaluator eval(vp);
  std::vector<RdmPair> out;
  for (std::size_t i = 0; i < vp.states.size(); ++i) out.push_back(compute_rdms(eval.evolved_state(i, theta)));
  return out;
}

std::vector<double> weights_of(const std::vector<TargetState>& states) {
  std::vector<double> w;
  for (const auto& s : states) w.push_back(s.weight);
  return w;
}

}  // namespace

OoResult run_oo_vqe(const OoProblem& problem, const OoOptions& options, const VqeOptions& vqe_options) {
  validate(problem.integrals, 1e-12);
  const auto m = static_cast<Eigen::Index>(problem.integrals.n_orb);

  OoResult res;
  res.integrals = problem.integrals;
  res.u_total = Eigen::MatrixXd::Identity(m, m);
  std::vector<double> theta = vqe_options.theta0;
  std::uint64_t step_offset = vqe_options.step_offset;
  double prev_post = std::numeric_limits<double>::quiet_NaN();
  const std::size_t max_macros = options.enabled ? options.max_macros : 1;
  if (max_macros == 0) throw std::invalid_argument("run_oo_vqe: max_macros must be positive");

  for (std::size_t macro = 0; macro < max_macros; ++macro) {
    const SaVqeProblem vp = make_vqe_problem(problem, res.integrals);
    VqeOptions opts = vqe_options;
    opts.theta0 = theta;
    opts.step_offset = step_offset;
    VqeResult vr;
    try {
      vr = run_vqe(vp, opts);
    } catch (const NonFiniteEnergy& e) {
      std::vector<TraceRow> all = std::move(res.trace);
      all.insert(all.end(), e.trace().begin(), e.trace().end());
      throw NonFiniteEnergy(e.step(), std::move(all));
    }
    step_offset += vr.steps;
    res.trace.insert(res.trace.end(), vr.trace.begin(), vr.trace.end());
    vr.trace.clear();
    theta = vr.theta;
    res.vqe = vr;
    res.rdms = state_rdms(vp, theta);

    if (!options.enabled) {
      res.converged = vr.converged;
      break;
    }

    const RdmPair avg = sa_rdms(res.rdms, weights_of(problem.states));
    const Eigen::MatrixXd grad = orbital_gradient(res.integrals, avg);
    const double grad_max = grad.cwiseAbs().maxCoeff();
    const double e_pre = vr.e_avg;
    MacroTrace row{macro, e_pre, e_pre, grad_max, 0.0};

    if (macro > 0 && std::abs(e_pre - prev_post) <= options.energy_tolerance && grad_max <= options.grad_tolerance) {
      res.macros.push_back(row);
      res.converged = vr.converged;
      break;
    }

    double eta = options.step_size;
    bool accepted = false;
    OrbitalRotation step;
    ActiveSpaceIntegrals trial;
    double e_trial = 0.0;
    for (std::size_t h = 0; h <= options.max_halvings; ++h, eta *= 0.5) {
      step = OrbitalRotation::from_upper(-eta * grad);
      trial = rotate_integrals(res.integrals, step);
      e_trial = SaVqeEvaluator(make_vqe_problem(problem, trial), vqe_options.precision, vqe_options.reduction)
                    .energy(theta)
                    .first;
      if (e_trial <= e_pre + 1e-12) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.macros.push_back(row);
      res.line_search_failed = true;
      break;
    }

    validate(trial, 1e-12);
    res.u_total = res.u_total * step.unitary();
    res.integrals = std::move(trial);
    row.e_avg_post = e_trial;
    row.kappa_step_norm = step.matrix().norm();
    res.macros.push_back(row);
    prev_post = e_trial;
    // the last step changed the Hamiltonian; keep the reported energies consistent with it
    res.vqe.e_avg = e_trial;
    res.vqe.energies = SaVqeEvaluator(make_vqe_problem(problem, res.integrals), vqe_options.precision,
                                      vqe_options.reduction)
                           .energy(theta)
                           .second;
  }

  const Eigen::MatrixXd log_u = res.u_total.log();
  res.kappa_total = OrbitalRotation::from_upper(log_u);
  return res;
}

void write_macro_csv(std::ostream& out, const std::vector<MacroTrace>& macros) {
  out << "macro,E_avg_pre,E_avg_post,grad_max,kappa_step_norm\n" << std::setprecision(17);
  for (const MacroTrace& r : macros)
    out << r.macro << ',' << r.e_avg_pre << ',' << r.e_avg_post << ',' << r.grad_max << ',' << r.kappa_step_norm
        << '\n';
}

}  // namespace spinvqe
