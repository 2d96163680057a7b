#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "spinvqe/jordan_wigner.hpp"

using namespace spinvqe;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(JordanWigner, LadderOperatorsMatchFermionicAction) {
  const std::size_t n = 5;
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::MatrixXcd lower = oracle::ops_matrix({{j, false}}, n).cast<cplx>();
    const Eigen::MatrixXcd raise = oracle::ops_matrix({{j, true}}, n).cast<cplx>();
    EXPECT_LT(max_abs(oracle::pauli_matrix(jw_lowering(j, n)) - lower), 1e-15) << j;
    EXPECT_LT(max_abs(oracle::pauli_matrix(jw_raising(j, n)) - raise), 1e-15) << j;
  }
}

TEST(JordanWigner, CanonicalAnticommutation) {
  const std::size_t n = 4;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const PauliSum ac = anticommutator(jw_lowering(i, n), jw_raising(j, n)).prune();
      if (i == j) {
        ASSERT_EQ(ac.size(), 1u);
        EXPECT_EQ(ac.coefficient(PauliLetters{}), cplx(1, 0));
      } else {
        EXPECT_TRUE(ac.empty());
      }
      EXPECT_TRUE(anticommutator(jw_lowering(i, n), jw_lowering(j, n)).prune().empty());
    }
}

TEST(JordanWigner, ProductMatchesFermionicAction) {
  const std::size_t n = 6;
  const std::vector<LadderOp> ops{{4, true}, {1, true}, {5, false}, {0, false}};
  const Eigen::MatrixXcd want =
      oracle::ops_matrix({{4, true}, {1, true}, {5, false}, {0, false}}, n).cast<cplx>();
  EXPECT_LT(max_abs(oracle::pauli_matrix(jw_product(ops, n)) - want), 1e-15);
}

TEST(JordanWigner, QubitHamiltonianEqualsCiMatrix) {
  std::mt19937_64 rng(17);
  for (std::size_t m : {1u, 2u, 3u}) {
    const auto ints = oracle::random_integrals(m, 1, 1, rng, 0.37);
    const PauliSum h = build_qubit_hamiltonian(ints);
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_LT(max_abs(oracle::pauli_matrix(h) - oracle::ci_matrix(ints).cast<cplx>()), 1e-12) << m;
  }
}

TEST(JordanWigner, SpinObservablesMatchLadderConstruction) {
  const std::size_t m = 3, n = 2 * m;
  const auto obs = build_spin_observables(m);
  Eigen::MatrixXd sp = Eigen::MatrixXd::Zero(1 << n, 1 << n), sz = sp, num = sp;
  for (std::size_t p = 0; p < m; ++p) {
    sp += oracle::ops_matrix({{2 * p, true}, {2 * p + 1, false}}, n);
    sz += 0.5 * (oracle::ops_matrix({{2 * p, true}, {2 * p, false}}, n) -
                 oracle::ops_matrix({{2 * p + 1, true}, {2 * p + 1, false}}, n));
    num += oracle::ops_matrix({{2 * p, true}, {2 * p, false}}, n) +
           oracle::ops_matrix({{2 * p + 1, true}, {2 * p + 1, false}}, n);
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(1 << n, 1 << n);
  const Eigen::MatrixXd s2 = sp.transpose() * sp + sz * (sz + id);
  EXPECT_LT(max_abs(oracle::pauli_matrix(obs.s2) - s2.cast<cplx>()), 1e-13);
  EXPECT_LT(max_abs(oracle::pauli_matrix(obs.sz) - sz.cast<cplx>()), 1e-15);
  EXPECT_LT(max_abs(oracle::pauli_matrix(obs.number) - num.cast<cplx>()), 1e-15);
}
