#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "spinvqe/ansatz.hpp"
#include "spinvqe/jordan_wigner.hpp"

using namespace spinvqe;

namespace {

std::string ket_string(const ReferenceState& ref, std::size_t k) {
  return occupation_string(ref.kets.at(k).first, ref.n_qubits());
}

}  // namespace

TEST(Reference, ClosedShellFirstFamily) {
  EXPECT_EQ(ket_string(build_reference_T0(5, 6, 0), 0), "1111110000");
  EXPECT_EQ(ket_string(build_reference_T0(5, 6, 1), 0), "1111101000");
  EXPECT_EQ(ket_string(build_reference_T0(5, 6, 2), 0), "1110101010");
  const auto r = build_reference_T0(5, 6, 2);
  EXPECT_EQ(r.n_alpha(), 5);
  EXPECT_EQ(r.n_beta(), 1);
}

TEST(Reference, TripletSuperposition) {
  const auto t = build_reference_T1(5, 6, 1);
  ASSERT_EQ(t.kets.size(), 2u);
  EXPECT_EQ(ket_string(t, 0), "1111001010");
  EXPECT_EQ(ket_string(t, 1), "1111100010");
  EXPECT_EQ(t.kets[0].second, cplx(1.0 / std::sqrt(2.0), 0));
  EXPECT_EQ(t.kets[1].second, cplx(-1.0 / std::sqrt(2.0), 0));
  EXPECT_EQ(build_reference_T1(5, 6, 0).kets, build_reference_T0(5, 6, 0).kets);
  EXPECT_EQ(build_reference_T1(5, 6, 2).kets, build_reference_T0(5, 6, 2).kets);
}

TEST(Reference, InfeasibleSpins) {
  EXPECT_THROW(build_reference_T0(2, 2, 2), InfeasibleSpin);
  EXPECT_THROW(build_reference_T0(3, 3, 0), InfeasibleSpin);
  EXPECT_THROW(build_reference_T0(2, 5, 0), InfeasibleSpin);
  EXPECT_THROW(build_reference_T1(3, 4, 1), InfeasibleSpin);
  EXPECT_NO_THROW(build_reference_T1(4, 4, 1));
}

TEST(Reference, PreparedStatesHaveDefiniteSpin) {
  const auto obs = build_spin_observables(5);
  for (InitialState fam : {InitialState::T0, InitialState::T1})
    for (int s : {0, 1, 2}) {
      const StateVector psi = prepare_state<double>(build_reference(fam, 5, 6, s));
      EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
      EXPECT_NEAR(expectation(psi, obs.s2), s * (s + 1.0), 1e-12);
      EXPECT_NEAR(expectation(psi, obs.sz), s, 1e-12);
      EXPECT_NEAR(expectation(psi, obs.number), 6.0, 1e-12);
    }
}

TEST(Ansatz, PairedGeneralizedCounts) {
  for (std::size_t m : {2u, 3u, 5u})
    for (std::size_t k : {1u, 2u}) {
      AnsatzSpec spec;
      spec.k = k;
      const auto prog = compile_ansatz(spec, m, 1, 1);
      EXPECT_EQ(prog.size(), k * 3 * m * (m - 1));
      EXPECT_EQ(prog.n_parameters, prog.size());
      spec.spin_adapted_singles = true;
      const auto shared = compile_ansatz(spec, m, 1, 1);
      EXPECT_EQ(shared.size(), prog.size());
      EXPECT_EQ(shared.n_parameters, k * 2 * m * (m - 1));
    }
}

TEST(Ansatz, PaperCountTying) {
  const std::vector<std::size_t> gens{240, 360, 504, 672, 864}, params{220, 330, 462, 616, 792};
  AnsatzSpec spec;
  spec.k = 4;
  spec.tying = Tying::paper_count;
  for (std::size_t m = 5; m <= 9; ++m) {
    const auto prog = compile_ansatz(spec, m, 4, 4);
    EXPECT_EQ(prog.size(), gens[m - 5]);
    EXPECT_EQ(prog.n_parameters, params[m - 5]);
  }
}

TEST(Ansatz, SinglesAndDoublesCounts) {
  AnsatzSpec spec;
  spec.flavor = AnsatzFlavor::UCCSD;
  const auto h2 = compile_ansatz(spec, 2, 1, 1);
  EXPECT_EQ(h2.size(), 3u);
  // 4 occupied, 4 virtual spin-orbitals split 2+2 per spin:
  // singles 2*2*2 = 8; doubles aa 1, bb 1, ab 4*4 = 16
  const auto c = compile_ansatz(spec, 4, 2, 2);
  EXPECT_EQ(c.size(), 8u + 1u + 1u + 16u);
}

TEST(Ansatz, EveryGeneratorConservesNumberAndSz) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  const auto obs = build_spin_observables(3);
  for (AnsatzFlavor f : {AnsatzFlavor::UCCSD, AnsatzFlavor::UCCGSD, AnsatzFlavor::kUpCCGSD}) {
    AnsatzSpec spec;
    spec.flavor = f;
    spec.k = f == AnsatzFlavor::kUpCCGSD ? 2 : 1;
    spec.reference_spin = 1;
    const auto prog = compile_ansatz(spec, 3, 2, 2);
    std::vector<double> theta(prog.n_parameters);
    for (double& t : theta) t = 0.3 * g(rng);
    StateVector psi = prepare_state<double>(build_reference_T0(3, 4, 1));
    apply_ansatz(psi, prog, theta);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-13);
    EXPECT_NEAR(expectation(psi, obs.number), 4.0, 1e-12) << to_string(f);
    EXPECT_NEAR(expectation(psi, obs.sz), 1.0, 1e-12) << to_string(f);
  }
}

TEST(Ansatz, NameParsing) {
  EXPECT_EQ(parse_flavor("kUpCCGSD"), AnsatzFlavor::kUpCCGSD);
  EXPECT_EQ(parse_flavor(to_string(AnsatzFlavor::UCCGSD)), AnsatzFlavor::UCCGSD);
  EXPECT_EQ(parse_tying("paper-count"), Tying::paper_count);
  EXPECT_EQ(parse_initial_state("T1"), InitialState::T1);
  EXPECT_THROW(parse_flavor("ADAPT"), std::invalid_argument);
}
