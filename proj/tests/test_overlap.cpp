#include <gtest/gtest.h>

#include "isingc/overlap.hpp"

using namespace isingc;

TEST(Overlap, SingleEdgeByHand) {
  complex k(0.3, 0.8), g0(0.1, -0.4), g1(-0.5, 0.2);
  IsingModel m(Graph::path(2), {k}, {g0, g1});
  complex expected = std::exp(k + g0 + g1) + std::exp(-k + g0 - g1) + std::exp(-k - g0 + g1) + std::exp(k - g0 - g1);
  EXPECT_LT(std::abs(z_via_overlap(m).to_complex() - expected), 1e-12 * std::abs(expected));
}

TEST(Overlap, MatchesBruteForceOnRandomModels) {
  RandomModelShape s{5, 7, 1.5, 1};
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    auto m = random_model(seed, s);
    EXPECT_LT(relative_error(z_via_overlap(m), brute_force_z_ising(m)), 1e-10) << seed;
  }
}

TEST(Overlap, RejectsMismatchedBra) {
  auto dg = decorate(Graph::path(3));
  ProductBra bra(std::vector<LocalBra>(3));
  EXPECT_THROW(overlap_decorated(dg, bra), std::invalid_argument);
  EXPECT_THROW(LocalBra(0.0, 0.0), std::invalid_argument);
}

TEST(Overlap, StateVectorNormalizedAndSupportedOnCocycles) {
  auto dg = decorate(Graph::cycle(3));
  auto psi = decorated_state_vector(dg);
  double norm = 0.0;
  for (auto a : psi) norm += std::norm(a);
  EXPECT_NEAR(norm, 1.0, 1e-14);
  // Edge bits around a cycle have even parity.
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (std::abs(psi[i]) > 0) { EXPECT_EQ(std::popcount(i >> 3) % 2, 0); }
}

TEST(Overlap, DecoratedAdjacency) {
  auto dg = decorate(Graph::path(3));
  auto adj = dg.adjacency();
  EXPECT_EQ(dg.num_qubits(), 5);
  EXPECT_EQ(adj[3], (std::vector<int>{0, 1}));
  EXPECT_EQ(adj[4], (std::vector<int>{1, 2}));
  EXPECT_EQ(adj[1], (std::vector<int>{3, 4}));
}

TEST(Overlap, ClockMatchesBruteForce) {
  for (int q = 2; q <= 4; ++q)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto base = random_model(seed + 500, {4, 5, 0.8, 1});
      std::vector<complex> ks = base.couplings, gs = base.fields;
      auto m = ClockModel::potts(base.graph, q, ks, gs);
      EXPECT_LT(relative_error(z_clock_via_overlap(m), brute_force_z_clock(m)), 1e-10);
    }
}
