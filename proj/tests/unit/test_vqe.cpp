#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "spinvqe/jordan_wigner.hpp"
#include "spinvqe/oracle.hpp"
#include "spinvqe/vqe.hpp"

using namespace spinvqe;

namespace {

SaVqeProblem make_problem(const ActiveSpaceIntegrals& ints, const std::vector<int>& spins, AnsatzSpec spec = {}) {
  SaVqeProblem p;
  p.hamiltonian = build_qubit_hamiltonian(ints);
  for (int s : spins) p.states.push_back({build_reference_T0(ints.n_orb, ints.n_electrons(), s), 1.0 / spins.size()});
  p.program = compile_ansatz(spec, ints.n_orb, ints.n_alpha, ints.n_beta);
  return p;
}

/// U(theta)|ref> from dense exponentials of each generator.
Eigen::VectorXcd dense_evolve(const SaVqeProblem& p, std::size_t i, const std::vector<double>& theta) {
  const std::size_t n = p.program.n_qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
  for (const auto& [b, c] : p.states[i].reference.kets) v(static_cast<Eigen::Index>(b)) = c;
  for (std::size_t g = 0; g < p.program.size(); ++g) {
    std::vector<oracle::Op> ops;
    for (const LadderOp& op : p.program.generators[g].ops()) ops.push_back({op.mode, op.dagger});
    const Eigen::MatrixXd m = oracle::ops_matrix(ops, n);
    v = oracle::expm(Eigen::MatrixXd(theta[p.program.slot[g]] * (m - m.transpose()))) * v;
  }
  return v;
}

}  // namespace

TEST(Schedule, PiecewiseValues) {
  const ScheduleParams s;
  EXPECT_EQ(schedule_rate(0, s), 1e-2);
  EXPECT_EQ(schedule_rate(34999, s), 1e-2);
  EXPECT_NEAR(schedule_rate(35000, s), 1e-2, 1e-15);
  EXPECT_NEAR(schedule_rate(40000, s), 9e-3 * 0.25 + 1e-3, 1e-15);
  EXPECT_EQ(schedule_rate(45000, s), 1e-3);
  EXPECT_EQ(schedule_rate(1000000, s), 1e-3);
  ScheduleParams bad;
  bad.transition = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(SaVqe, EnergyMatchesDenseEvolution) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  const auto ints = oracle::random_integrals(3, 2, 2, rng, 0.5);
  const auto p = make_problem(ints, {0, 1});
  const Eigen::MatrixXd h = oracle::ci_matrix(ints);
  std::vector<double> theta(p.program.n_parameters);
  for (double& t : theta) t = 0.2 * g(rng);
  const auto [e_avg, energies] = sa_energy(theta, p);
  double want_avg = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const Eigen::VectorXcd v = dense_evolve(p, i, theta);
    const double e = (v.adjoint() * h.cast<cplx>() * v)(0).real();
    EXPECT_NEAR(energies[i], e, 1e-11);
    want_avg += e / 2.0;
  }
  EXPECT_NEAR(e_avg, want_avg, 1e-11);
}

TEST(SaVqe, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  const auto ints = oracle::random_integrals(3, 2, 2, rng);
  auto p = make_problem(ints, {0, 1});
  p.states[0].weight = 0.7;
  p.states[1].weight = 0.3;
  std::vector<double> theta(p.program.n_parameters);
  for (double& t : theta) t = 0.5 * g(rng);
  const auto grad = sa_gradient(theta, p);
  const double h = 1e-5;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    auto tp = theta, tm = theta;
    tp[k] += h;
    tm[k] -= h;
    const double fd = (sa_energy(tp, p).first - sa_energy(tm, p).first) / (2 * h);
    EXPECT_NEAR(grad[k], fd, 1e-8) << k;
  }
}

TEST(SaVqe, SinglePrecisionGradientAgrees) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g;
  const auto ints = oracle::random_integrals(3, 2, 2, rng);
  const auto p = make_problem(ints, {0, 1});
  std::vector<double> theta(p.program.n_parameters);
  for (double& t : theta) t = 0.5 * g(rng);
  std::vector<double> g64, g32;
  const SaVqeEvaluator e64(p), e32(p, Precision::f32);
  const double a = e64.gradient(theta, g64).first;
  const double b = e32.gradient(theta, g32).first;
  EXPECT_NEAR(a, b, 1e-4);
  for (std::size_t k = 0; k < g64.size(); ++k) EXPECT_NEAR(g64[k], g32[k], 1e-3);
}

TEST(SaVqe, ConvergesOnH2) {
  const auto ints = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  auto p = make_problem(ints, {0});
  p.max_steps = 20000;
  const VqeResult r = run_vqe(p);
  EXPECT_TRUE(r.converged);
  const double exact = casci_energy(ints, 2, 0);
  EXPECT_LT(std::abs(r.e_avg - exact), 1.6e-3);
  EXPECT_GE(r.e_avg, exact - 1e-9);
  EXPECT_EQ(r.trace.front().lr, 1e-2);
  EXPECT_EQ(r.trace.size(), r.steps);
}

TEST(SaVqe, NonFiniteParametersAbort) {
  const auto ints = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  const auto p = make_problem(ints, {0});
  VqeOptions opt;
  opt.theta0.assign(p.program.n_parameters, std::nan(""));
  try {
    run_vqe(p, opt);
    FAIL() << "expected NonFiniteEnergy";
  } catch (const NonFiniteEnergy& e) {
    EXPECT_EQ(e.step(), 0u);
    EXPECT_EQ(e.trace().size(), 1u);
  }
}

TEST(SaVqe, ProblemValidation) {
  const auto ints = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  auto p = make_problem(ints, {0});
  p.states[0].weight = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  VqeOptions opt;
  opt.theta0.assign(1, 0.0);
  EXPECT_THROW(run_vqe(make_problem(ints, {0}), opt), std::invalid_argument);
}

TEST(SaVqe, TraceCsvLayout) {
  TraceRow row;
  row.step = 3;
  row.lr = 0.01;
  row.e_avg = -1.0;
  row.energies = {-1.5, -0.5};
  row.s2 = {0.0, 6.0};
  std::ostringstream out;
  write_trace_csv(out, {row}, {0, 2});
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "step,lr,E_avg,E_S0,E_S1,E_S2,S2_S0,S2_S1,S2_S2");
  EXPECT_NE(text.find("3,0.01,-1,-1.5,,-0.5,0,,6"), std::string::npos) << text;
}
