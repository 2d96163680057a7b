#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "spinvqe/pauli.hpp"

using namespace spinvqe;

namespace {

PauliSum random_sum(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << n) - 1);
  std::normal_distribution<double> g;
  PauliSum s(n);
  for (std::size_t k = 0; k < terms; ++k) s.add(PauliLetters{mask(rng), mask(rng)}, cplx(g(rng), g(rng)));
  return s;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Pauli, SingleQubitProducts) {
  const PauliString x{1.0, PauliLetters::single(0, 'X')};
  const PauliString y{1.0, PauliLetters::single(0, 'Y')};
  const PauliString z{1.0, PauliLetters::single(0, 'Z')};
  const PauliString xy = x * y;
  EXPECT_EQ(xy.letters, z.letters);
  EXPECT_EQ(xy.coefficient, cplx(0, 1));
  const PauliString yx = y * x;
  EXPECT_EQ(yx.coefficient, cplx(0, -1));
  const PauliString yy = y * y;
  EXPECT_TRUE(yy.letters.is_identity());
  EXPECT_EQ(yy.coefficient, cplx(1, 0));
  EXPECT_EQ((z * x).coefficient, cplx(0, 1));
}

TEST(Pauli, LetterStringsRoundTrip) {
  const PauliLetters l = PauliLetters::from_string("XIZY");
  EXPECT_EQ(l.to_string(4), "XIZY");
  EXPECT_EQ(l.x, 0b1001u);
  EXPECT_EQ(l.z, 0b0011u);
  EXPECT_EQ(PauliLetters::from_string("IIIZ"), PauliLetters::single(0, 'Z'));
  EXPECT_THROW(PauliLetters::from_string("XQ"), std::invalid_argument);
}

TEST(Pauli, ProductMatchesDenseMatrices) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const PauliSum a = random_sum(4, 6, rng), b = random_sum(4, 5, rng);
    const Eigen::MatrixXcd ma = oracle::pauli_matrix(a), mb = oracle::pauli_matrix(b);
    EXPECT_LT(max_abs(oracle::pauli_matrix(a * b) - ma * mb), 1e-12);
    EXPECT_LT(max_abs(oracle::pauli_matrix(commutator(a, b)) - (ma * mb - mb * ma)), 1e-12);
    EXPECT_LT(max_abs(oracle::pauli_matrix(anticommutator(a, b)) - (ma * mb + mb * ma)), 1e-12);
    EXPECT_LT(max_abs(oracle::pauli_matrix(a.adjoint()) - ma.adjoint()), 1e-15);
    EXPECT_LT(max_abs(oracle::pauli_matrix(a + b) - (ma + mb)), 1e-14);
  }
}

TEST(Pauli, HermitianCheckAndPrune) {
  std::mt19937_64 rng(2);
  const PauliSum a = random_sum(3, 5, rng);
  const PauliSum h = a + a.adjoint();
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_FALSE((h * cplx(0, 1)).is_hermitian());
  PauliSum s(2);
  s.add(PauliLetters::single(0, 'X'), 1e-13);
  s.add(PauliLetters::single(1, 'Z'), 0.5);
  s.prune();
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.coefficient(PauliLetters::single(1, 'Z')), cplx(0.5, 0));
  EXPECT_EQ(s.coefficient(PauliLetters::single(0, 'X')), cplx(0, 0));
}

TEST(Pauli, TextRoundTripIsExact) {
  std::mt19937_64 rng(3);
  const PauliSum a = random_sum(5, 12, rng);
  std::stringstream io;
  a.write_text(io);
  const PauliSum b = PauliSum::read_text(io);
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [l, c] : a.terms()) EXPECT_EQ(b.coefficient(l), c);
}
