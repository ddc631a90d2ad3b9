#include <gtest/gtest.h>

#include "isingc/branch.hpp"
#include "oracles.hpp"

using namespace isingc;

namespace {

int frame_order(Frame f) {
  Frame p = f;
  for (int k = 1; k <= 6; ++k) {
    if (p.is_identity()) return k;
    p = p * f;
  }
  return -1;
}

struct Checked {
  BranchCertificate cert;
  double dense_error;
};

Checked compile_and_check(const CliffordCircuit& circ, const LayoutOptions& opt = {}, const BranchOptions& bopt = {}) {
  auto layout = layout_on_cluster(circ, opt);
  auto target = circ.run();
  auto cert = execute_branch(layout, target, bopt);
  double err = -1.0;
  if (layout.num_sites() <= 20) err = oracle::branch_identity_error(cert, oracle::canonical_phase(oracle::run_circuit(circ)));
  return {cert, err};
}

}  // namespace

TEST(Frame, GroupStructure) {
  EXPECT_EQ(frame_order(Frame::hadamard()), 2);
  EXPECT_EQ(frame_order(Frame::phase()), 2);
  EXPECT_EQ(frame_order(Frame::hadamard() * Frame::phase()), 3);
  EXPECT_TRUE(Frame::phase().diagonal());
  EXPECT_FALSE(Frame::hadamard().diagonal());
}

TEST(Layout, EmptyWireIsChainOfXMeasurements) {
  CliffordCircuit c(1);
  LayoutOptions opt;
  opt.min_output_column = 4;
  auto r = compile_and_check(c, opt);
  const auto& L = r.cert.layout;
  EXPECT_EQ(L.width, 5);
  EXPECT_EQ(L.height, 1);
  EXPECT_EQ(L.render(), "XXXX0\n");
  EXPECT_LT(r.dense_error, 1e-12);
}

TEST(Layout, HadamardPrimitive) {
  CliffordCircuit c(1);
  c.h(0);
  auto r = compile_and_check(c);
  EXPECT_EQ(r.cert.layout.render(), "X0\n");
  EXPECT_LT(r.dense_error, 1e-12);
}

TEST(Layout, PhasePrimitives) {
  for (int k = 1; k <= 3; ++k) {
    CliffordCircuit c(1);
    for (int i = 0; i < k; ++i) c.s(0);
    c.h(0);
    auto r = compile_and_check(c);
    EXPECT_LT(r.dense_error, 1e-12) << k;
  }
}

TEST(Layout, AdjacentCzPrimitive) {
  CliffordCircuit c(2);
  c.cz(0, 1);
  auto r = compile_and_check(c);
  EXPECT_LE(r.cert.layout.num_sites(), 16);
  EXPECT_EQ(r.cert.layout.stats.bridges, 1);
  EXPECT_LT(r.dense_error, 1e-12);
}

TEST(Layout, SwapPrimitiveRelabelsOutputs) {
  CliffordCircuit c(2);
  c.h(0).swap(0, 1);
  auto r = compile_and_check(c);
  EXPECT_LT(r.dense_error, 1e-12);
}

TEST(Layout, RoutedCzUsesPhysicalSwaps) {
  CliffordCircuit c(3);
  c.cz(0, 2).h(1);
  LayoutOptions opt;
  opt.wire_order = {0, 1, 2};
  auto r = compile_and_check(c, opt);
  EXPECT_EQ(r.cert.layout.stats.routing_swaps, 1);
  EXPECT_EQ(r.cert.layout.stats.bridges, 4);
}

TEST(Layout, SingleDecoratedEdgeFitsDenseOracle) {
  auto dg = decorate(Graph::path(2));
  auto circ = synthesize_prep_circuit(dg);
  auto layout = layout_on_cluster(circ);
  ASSERT_LE(layout.num_sites(), 20);
  auto cert = execute_branch(layout, dg);
  EXPECT_LT(oracle::branch_identity_error(cert, decorated_state_vector(dg)), 1e-12);
  EXPECT_NEAR(std::abs(cert.scalar.to_complex()), std::pow(2.0, 0.5 * cert.r), 1e-12);
}

TEST(Layout, PrepCircuitMatchesDecoratedState) {
  for (auto g : {Graph(3, {}), Graph::path(2), Graph::cycle(3), Graph::complete(4)}) {
    auto dg = decorate(g);
    auto circ = synthesize_prep_circuit(dg);
    EXPECT_EQ(static_cast<int>(circ.gates().size()), 3 * g.num_edges());
    EXPECT_TRUE(states_equal(circ.run(), decorated_tableau(dg)));
    if (dg.num_qubits() <= 12) {
      EXPECT_LT(oracle::max_abs_diff(oracle::run_circuit(circ), decorated_state_vector(dg)), 1e-12);
    }
  }
}

TEST(Layout, RandomCircuitsDenseChecked) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 2);
    CliffordCircuit c(n);
    int len = static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) {
      int a = static_cast<int>(rng() % n);
      switch (rng() % 4) {
        case 0: c.h(a); break;
        case 1: c.s(a); break;
        case 2: if (n > 1) c.cz(0, 1); break;
        case 3: if (n > 1) c.swap(0, 1); break;
      }
    }
    auto layout = layout_on_cluster(c);
    if (layout.num_sites() > 18) continue;
    auto cert = execute_branch(layout, c.run());
    EXPECT_LT(oracle::branch_identity_error(cert, oracle::canonical_phase(oracle::run_circuit(c))), 1e-12) << trial;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(Branch, OtherOutcomesStillCertify) {
  auto dg = decorate(Graph::path(2));
  auto layout = layout_on_cluster(synthesize_prep_circuit(dg));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    BranchOptions opt;
    opt.preferred.assign(static_cast<std::size_t>(layout.num_sites()), 1);
    for (auto& p : opt.preferred) p = (rng() & 1) ? 1 : -1;
    auto cert = execute_branch(layout, dg, opt);
    EXPECT_LT(oracle::branch_identity_error(cert, decorated_state_vector(dg)), 1e-12);
  }
}

TEST(Branch, StabilizerCheckOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto m = random_model(seed, {5, 6, 1.0, 1});
    auto dg = decorate(m.graph);
    auto layout = layout_on_cluster(synthesize_prep_circuit(dg));
    EXPECT_NO_THROW(execute_branch(layout, dg)) << seed;
  }
}
