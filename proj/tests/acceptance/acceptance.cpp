// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
// any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spinvqe/ansatz.hpp"
#include "spinvqe/diagnostics.hpp"
#include "spinvqe/excitation.hpp"
#include "spinvqe/jordan_wigner.hpp"
#include "spinvqe/oracle.hpp"
#include "spinvqe/scf.hpp"
#include "spinvqe/vqe.hpp"
#include "spinvqe/workflow.hpp"

using namespace spinvqe;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Eigen::MatrixXd dense_generator(const ExcitationGenerator& gen, std::size_t n) {
  std::vector<oracle::Op> ops;
  for (const LadderOp& op : gen.ops()) ops.push_back({op.mode, op.dagger});
  const Eigen::MatrixXd g = oracle::ops_matrix(ops, n);
  return g - g.transpose();
}

/// Lowest eigenvalue of the dense CI matrix restricted to one (N, 2 S_z) sector.
Eigen::VectorXd dense_sector_eigenvalues(const Eigen::MatrixXd& h, std::size_t n, int ne, int two_sz) {
  const auto idx = oracle::sector_indices(n, ne, two_sz);
  const auto d = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd sub(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sub(i, j) = h(idx[i], idx[j]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sub, Eigen::EigenvaluesOnly).eigenvalues();
}

SaVqeProblem three_state_problem(const ActiveSpaceIntegrals& ints, const AnsatzSpec& spec) {
  SaVqeProblem p;
  p.hamiltonian = build_qubit_hamiltonian(ints);
  for (int s : {0, 1, 2}) p.states.push_back({build_reference_T0(ints.n_orb, ints.n_electrons(), s), 1.0 / 3.0});
  p.program = compile_ansatz(spec, ints.n_orb, ints.n_alpha, ints.n_beta);
  return p;
}

// 1
Outcome ansatz_scaling() {
  AnsatzSpec spec;
  spec.tying = Tying::paper_count;
  spec.k = 4;
  const std::array<std::size_t, 5> want{240, 360, 504, 672, 864};
  std::ostringstream got;
  bool ok = true;
  for (std::size_t m = 5; m <= 9; ++m) {
    const auto c = count_ansatz(spec, m, 4, 4);
    got << c.generators << ' ';
    ok = ok && c.generators == want[m - 5];
  }
  spec.k = 3;
  const auto c10 = count_ansatz(spec, 10, 4, 4);
  got << "| M=10,k=3: " << c10.generators << '/' << c10.parameters;
  ok = ok && c10.generators == 810 && c10.parameters == 720;
  return {ok, got.str()};
}

// 2
Outcome generator_exponential() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> th(-M_PI, M_PI);
  const std::size_t n = 8;
  double worst = 0.0;
  for (int kind = 0; kind < 3; ++kind)
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::size_t> modes(n), orbs{0, 1, 2, 3};
      for (std::size_t i = 0; i < n; ++i) modes[i] = i;
      std::shuffle(modes.begin(), modes.end(), rng);
      std::shuffle(orbs.begin(), orbs.end(), rng);
      const ExcitationGenerator gen =
          kind == 0   ? ExcitationGenerator::single(modes[0], modes[1])
          : kind == 1 ? ExcitationGenerator::pair_double(orbs[0], orbs[1])
                      : ExcitationGenerator::double_excitation(modes[0], modes[1], modes[2], modes[3]);
      const double theta = th(rng);
      StateVector psi = oracle::random_state(n, rng);
      const Eigen::VectorXcd want = oracle::expm(Eigen::MatrixXd(theta * dense_generator(gen, n))) * oracle::to_eigen(psi);
      apply_excitation_exponential(psi, gen, theta);
      worst = std::max(worst, (oracle::to_eigen(psi) - want).cwiseAbs().maxCoeff());
    }
  return {worst <= 1e-12, "max amplitude error " + num(worst) + " over 600 triples"};
}

// 3
Outcome isospectrality() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto ints = oracle::random_integrals(2, 1, 1, rng, 0.1 * trial);
    const Eigen::VectorXd a = oracle::eigenvalues(oracle::pauli_matrix(build_qubit_hamiltonian(ints)));
    const Eigen::VectorXd b = oracle::eigenvalues(oracle::ci_matrix(ints).cast<cplx>());
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-9, "max eigenvalue deviation " + num(worst)};
}

// 4
Outcome gradient_correctness() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto ints = oracle::random_integrals(4, 2, 2, rng, 0.7);
  AnsatzSpec spec;
  spec.k = 2;
  const SaVqeProblem p = three_state_problem(ints, spec);
  const double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> theta(p.program.n_parameters);
    for (double& t : theta) t = u(rng);
    const auto g = sa_gradient(theta, p);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      auto tp = theta, tm = theta;
      tp[k] += h;
      tm[k] -= h;
      const double fd = (sa_energy(tp, p).first - sa_energy(tm, p).first) / (2 * h);
      err = std::max(err, std::abs(g[k] - fd));
      scale = std::max(scale, std::abs(fd));
    }
    worst = std::max(worst, err / scale);
  }
  return {worst <= 1e-6, "max relative error " + num(worst) + " (" + std::to_string(p.program.n_parameters) +
                             " parameters, 3 states)"};
}

// 5
Outcome vqe_accuracy() {
  const auto ints = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  const double exact = dense_sector_eigenvalues(oracle::ci_matrix(ints), 4, 2, 0)(0);
  SaVqeProblem p;
  p.hamiltonian = build_qubit_hamiltonian(ints);
  p.states.push_back({build_reference_T0(2, 2, 0), 1.0});
  p.program = compile_ansatz(AnsatzSpec{}, 2, 1, 1);
  const VqeResult r = run_vqe(p);
  const double diff = r.e_avg - exact;
  const bool ok = r.converged && std::abs(diff) <= 1.6e-3 && diff >= -1e-9;
  return {ok, "E_vqe - E_fci = " + num(diff) + " Ha after " + std::to_string(r.steps) + " steps" +
                  (r.converged ? "" : " (not converged)")};
}

struct ConservationRun {
  VqeResult result;
  bool ran = false;
};

ConservationRun& conservation_run() {
  static ConservationRun run;
  if (!run.ran) {
    std::mt19937_64 rng(6);
    const auto ints = oracle::random_integrals(4, 2, 2, rng, 0.2);
    AnsatzSpec spec;
    spec.spin_adapted_singles = true;
    const SaVqeProblem p = three_state_problem(ints, spec);
    run.result = run_vqe(p);
    run.ran = true;
  }
  return run;
}

// 6
Outcome spin_number_conservation() {
  const VqeResult& r = conservation_run().result;
  const std::array<int, 3> spins{0, 1, 2};
  double dn = 0.0, dsz = 0.0, ds2 = 0.0;
  for (const TraceRow& row : r.trace)
    for (std::size_t i = 0; i < 3; ++i) {
      dn = std::max(dn, std::abs(row.number[i] - 4.0));
      dsz = std::max(dsz, std::abs(row.sz[i] - spins[i]));
      ds2 = std::max(ds2, std::abs(row.s2[i] - spins[i] * (spins[i] + 1.0)));
    }
  const bool ok = r.converged && !r.trace.empty() && dn <= 1e-10 && dsz <= 1e-10 && ds2 <= 1e-8;
  return {ok, std::to_string(r.trace.size()) + " rows" + (r.converged ? "" : " (not converged)") +
                  "; max |dN| " + num(dn) + ", |dSz| " + num(dsz) + ", |dS2| " + num(ds2)};
}

// 7
Outcome state_orthogonality() {
  const VqeResult& r = conservation_run().result;
  double worst = 0.0;
  for (const TraceRow& row : r.trace) worst = std::max(worst, row.max_overlap);
  return {!r.trace.empty() && worst <= 1e-10, "max pairwise overlap " + num(worst) + " over " +
                                                  std::to_string(r.trace.size()) + " rows"};
}

// 8
Outcome schedule_conformance() {
  const ScheduleParams params;
  const double i = 1e-2, e = 1e-3, b = 35000, t = 10000, pw = 2;
  auto reference = [&](double s) {
    if (s < b) return i;
    if (s < b + t) return (i - e) * std::pow(1.0 - (s - b) / t, pw) + e;
    return e;
  };
  double worst = 0.0;
  for (std::uint64_t s : {0ULL, 34999ULL, 35000ULL, 40000ULL, 45000ULL, 1000000ULL})
    worst = std::max(worst, std::abs(schedule_rate(s, params) - reference(static_cast<double>(s))));
  return {worst <= 1e-15, "max deviation " + num(worst)};
}

// 9
Outcome orbital_invariance() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  const auto ints = oracle::random_integrals(4, 2, 2, rng, 0.4);
  const PauliSum h0 = build_qubit_hamiltonian(ints);
  double spec_err = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    OrbitalRotation k(4);
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) k.set(p, q, 0.6 * g(rng));
    const PauliSum h1 = build_qubit_hamiltonian(rotate_integrals(ints, k));
    for (int tsz : {0, 2, 4}) {
      const auto a = sector_spectrum(h0, 4, tsz).eigenvalues, b = sector_spectrum(h1, 4, tsz).eigenvalues;
      for (std::size_t j = 0; j < a.size(); ++j) spec_err = std::max(spec_err, std::abs(a[j] - b[j]));
    }
  }

  // exact eigenstates of every spin, state-averaged
  std::vector<RdmPair> rdms;
  for (int s : {0, 1, 2}) {
    const SectorSpectrum sp = sector_spectrum(h0, 4, 2 * s);
    StateVector psi(8);
    for (std::size_t j = 0; j < sp.basis.size(); ++j) psi[sp.basis[j]] = sp.eigenvectors(static_cast<Eigen::Index>(j), 0);
    rdms.push_back(compute_rdms(psi));
  }
  const double exact_grad = orbital_gradient(ints, sa_rdms(rdms, {1.0 / 3, 1.0 / 3, 1.0 / 3})).cwiseAbs().maxCoeff();

  double fd_err = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const RdmPair r = compute_rdms(oracle::random_sector_state(8, 4, 2 * (trial - 1), rng));
    const Eigen::MatrixXd grad = orbital_gradient(ints, r);
    const double h = 1e-5;
    double err = 0.0, scale = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) {
        OrbitalRotation kp(4), km(4);
        kp.set(p, q, h);
        km.set(p, q, -h);
        const double fd = (energy_from_rdms(rotate_integrals(ints, kp), r.gamma, r.Gamma) -
                           energy_from_rdms(rotate_integrals(ints, km), r.gamma, r.Gamma)) /
                          (2 * h);
        err = std::max(err, std::abs(grad(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) - fd));
        scale = std::max(scale, std::abs(fd));
      }
    fd_err = std::max(fd_err, err / scale);
  }
  const bool ok = spec_err <= 1e-9 && exact_grad <= 1e-8 && fd_err <= 1e-6;
  return {ok, "spectrum shift " + num(spec_err) + ", |G| at exact states " + num(exact_grad) +
                  ", FD relative error " + num(fd_err)};
}

// 10
Outcome diagnostics_golden() {
  double det_z = 0.0;
  for (int s : {0, 1, 2}) det_z = std::max(det_z, std::abs(z_s1(prepare_state<double>(build_reference_T0(5, 6, s)))));

  const StateVector t1 = prepare_state<double>(build_reference_T1(5, 6, 1));
  const double t1_z = z_s1(t1);
  const Eigen::MatrixXd mi = mutual_information(t1);
  double mi_err = 0.0;
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 5; ++j) {
      const bool pair = (i == 2 && j == 3) || (i == 3 && j == 2);
      mi_err = std::max(mi_err, std::abs(mi(i, j) - (pair ? std::log(2.0) : 0.0)));
    }

  // four orbitals; orbital o is maximally entangled with orbital o + 2
  std::vector<cplx> amp(256);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) amp[a | (b << 2) | (a << 4) | (b << 6)] = 0.25;
  const double mixed_z = z_s1(StateVector::from_amplitudes(8, amp));

  std::mt19937_64 rng(10);
  double route = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // fixed (N, S_z) states, the domain of the occupation formula
    const int ne = 1 + trial % 7;
    const int two_sz = ne <= 4 ? (ne % 2) : -(ne % 2);
    const StateVector psi = oracle::random_sector_state(8, ne, two_sz, rng);
    for (std::size_t o = 0; o < 4; ++o) {
      std::array<double, 4> w = one_orbital_eigenvalues(psi, o);
      std::sort(w.begin(), w.end());
      const std::array<std::size_t, 1> orb{o};
      const Eigen::VectorXd ev = oracle::eigenvalues(reduced_density(psi, orb));
      for (int k = 0; k < 4; ++k) route = std::max(route, std::abs(w[k] - ev(k)));
    }
  }
  const bool ok = det_z <= 1e-10 && std::abs(t1_z - 0.2) <= 1e-10 && std::abs(mixed_z - 1.0) <= 1e-10 &&
                  mi_err <= 1e-10 && route <= 1e-10;
  return {ok, "Z(det) " + num(det_z) + ", Z(T1) " + num(t1_z) + ", Z(mixed) " + num(mixed_z) + ", I err " +
                  num(mi_err) + ", route gap " + num(route)};
}

// 11
Outcome reference_kets() {
  const SpinObservables obs = build_spin_observables(5);
  bool ok = occupation_string(build_reference_T0(5, 6, 0).kets.at(0).first, 10) == "1111110000" &&
            occupation_string(build_reference_T0(5, 6, 1).kets.at(0).first, 10) == "1111101000" &&
            occupation_string(build_reference_T0(5, 6, 2).kets.at(0).first, 10) == "1110101010";
  const ReferenceState t1 = build_reference_T1(5, 6, 1);
  ok = ok && t1.kets.size() == 2 && occupation_string(t1.kets[0].first, 10) == "1111001010" &&
       occupation_string(t1.kets[1].first, 10) == "1111100010" && t1.kets[0].second.real() > 0 &&
       t1.kets[1].second.real() < 0 && std::abs(std::abs(t1.kets[0].second) - 1.0 / std::sqrt(2.0)) == 0.0;
  std::ostringstream d;
  const std::array<std::array<double, 3>, 3> want{{{0, 0, 6}, {2, 1, 6}, {6, 2, 6}}};
  double worst = 0.0;
  for (InitialState fam : {InitialState::T0, InitialState::T1})
    for (int s : {0, 1, 2}) {
      const StateVector psi = prepare_state<double>(build_reference(fam, 5, 6, s));
      const std::array<double, 3> got{expectation(psi, obs.s2), expectation(psi, obs.sz), expectation(psi, obs.number)};
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(got[k] - want[s][k]));
    }
  ok = ok && worst <= 1e-12;
  return {ok, "strings match: " + std::string(ok ? "yes" : "no") + ", observable deviation " + num(worst)};
}

// 12
Outcome reproducibility() {
  std::mt19937_64 rng(12);
  const auto ints = oracle::random_integrals(4, 2, 2, rng, 1.5);
  const fs::path dir = fs::temp_directory_path() / "spinvqe_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "input.fcidump");
    write_fcidump(out, ints);
  }
  RunConfig cfg;
  cfg.fcidump = (dir / "input.fcidump").string();
  cfg.output_dir = (dir / "out").string();
  cfg.theta_init = "random";
  cfg.seed = 20241018;
  cfg.deterministic = true;
  cfg.vqe_max_steps = 400;
  cfg.oo.max_macros = 3;
  auto read_report = [&]() {
    std::ifstream in(dir / "out" / "report.json", std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const RunOutcome a = run_workflow(cfg);
  const std::string first = read_report();
  const RunOutcome b = run_workflow(cfg);
  const std::string second = read_report();
  fs::remove_all(dir);
  const bool ok = !first.empty() && first == second && a.exit_code == b.exit_code &&
                  (a.exit_code == kExitConverged || a.exit_code == kExitNotConverged);
  return {ok, std::to_string(first.size()) + "-byte reports " + (first == second ? "identical" : "differ") +
                  ", exit code " + std::to_string(a.exit_code)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double limit_seconds;  // 0 = no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"ansatz scaling table", ansatz_scaling, 1.0},
      {"generator exponential exactness", generator_exponential, 30.0},
      {"isospectrality", isospectrality, 30.0},
      {"gradient correctness", gradient_correctness, 120.0},
      {"VQE accuracy", vqe_accuracy, 120.0},
      {"spin/number conservation", spin_number_conservation, 0.0},
      {"state-averaged orthogonality", state_orthogonality, 0.0},
      {"schedule conformance", schedule_conformance, 0.0},
      {"orbital-rotation invariance", orbital_invariance, 0.0},
      {"diagnostics golden values", diagnostics_golden, 0.0},
      {"reference kets", reference_kets, 0.0},
      {"end-to-end reproducibility", reproducibility, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_seconds > 0 && secs > criteria[i].limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + num(criteria[i].limit_seconds) + " s limit";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
