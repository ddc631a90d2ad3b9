#include <gtest/gtest.h>

#include <random>

#include "isingc/overlap.hpp"
#include "isingc/tableau.hpp"

using namespace isingc;

namespace {

std::vector<complex> project(std::vector<complex> v, const PauliOperator& p, int sign) {
  auto pv = p.apply(v);
  double norm = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = 0.5 * (v[i] + double(sign) * pv[i]);
    norm += std::norm(v[i]);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

double fidelity(const std::vector<complex>& a, const std::vector<complex>& b) {
  complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

}  // namespace

TEST(Tableau, InitialStateAndValidity) {
  StabilizerTableau t(3);
  EXPECT_TRUE(t.is_valid());
  auto v = dense_vector(t);
  EXPECT_NEAR(v[0].real(), 1.0, 1e-14);
  EXPECT_EQ(t.sign_in_group(PauliOperator::from_string("ZZI")), 1);
  EXPECT_EQ(t.sign_in_group(PauliOperator::from_string("-ZII")), -1);
  EXPECT_FALSE(t.sign_in_group(PauliOperator::from_string("XII")).has_value());
}

TEST(Tableau, DecoratedGraphStateMatchesDenseVector) {
  for (auto g : {Graph::path(2), Graph::path(3), Graph::cycle(3), Graph::complete(4)}) {
    auto dg = decorate(g);
    auto hs = dg.edge_qubits();
    auto t = graph_state_tableau(dg.adjacency(), hs);
    ASSERT_TRUE(t.is_valid());
    EXPECT_NEAR(fidelity(dense_vector(t), decorated_state_vector(dg)), 1.0, 1e-12);
  }
}

TEST(Tableau, RandomCliffordMeasurementsMatchDenseSimulation) {
  std::mt19937_64 rng(7);
  const int n = 5;
  for (int trial = 0; trial < 40; ++trial) {
    StabilizerTableau t(n);
    for (int step = 0; step < 30; ++step) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      switch (rng() % 5) {
        case 0: t.apply_h(a); break;
        case 1: t.apply_s(a); break;
        case 2: t.apply_s_dag(a); break;
        case 3: if (a != b) t.apply_cz(a, b); break;
        case 4: t.apply_swap(a, b); break;
      }
    }
    auto v = dense_vector(t);
    int q = static_cast<int>(rng() % n);
    auto basis = static_cast<PauliBasis>(rng() % 3);
    int preferred = (rng() & 1) ? 1 : -1;
    auto r = t.measure(q, basis, preferred);
    ASSERT_TRUE(t.is_valid());
    auto obs = PauliOperator::single(n, q, basis);
    auto pv = obs.apply(v);
    complex expval = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) expval += std::conj(v[i]) * pv[i];
    if (r.was_random) {
      EXPECT_NEAR(expval.real(), 0.0, 1e-10);
    } else {
      EXPECT_NEAR(expval.real(), double(r.outcome), 1e-10);
    }
    EXPECT_NEAR(fidelity(dense_vector(t), project(v, obs, r.outcome)), 1.0, 1e-10);
  }
}

TEST(Tableau, PauliCorrectionRecoversFlip) {
  auto dg = decorate(Graph::cycle(3));
  auto target = graph_state_tableau(dg.adjacency(), dg.edge_qubits());
  auto got = target;
  auto flip = PauliOperator::from_string("ZIXIYX");
  got.apply_pauli(flip);
  EXPECT_FALSE(states_equal(got, target));
  auto corr = find_pauli_correction(got, target);
  got.apply_pauli(corr);
  EXPECT_TRUE(states_equal(got, target));
}

TEST(Tableau, CorrectionThrowsForInequivalentStates) {
  StabilizerTableau a(2), b = StabilizerTableau::all_plus(2);
  EXPECT_THROW(find_pauli_correction(a, b), NotEquivalentError);
}

TEST(Tableau, MappedComparisonIgnoresMeasuredQubits) {
  // Bell pair on qubits 1,3 of a 4-qubit register; qubits 0,2 left in |0>.
  StabilizerTableau big(4);
  big.apply_h(1);
  big.apply_h(3);
  big.apply_cz(1, 3);
  StabilizerTableau small(2);
  small.apply_h(0);
  small.apply_h(1);
  small.apply_cz(0, 1);
  std::vector<int> sites{1, 3};
  EXPECT_TRUE(states_equal_on(big, sites, small));
  big.apply_pauli(PauliOperator::from_string("IZII"));
  auto c = find_pauli_correction_on(big, sites, small);
  EXPECT_EQ(c.to_string(), "+ZI");
}
