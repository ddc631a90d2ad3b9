#include <gtest/gtest.h>

#include <random>

#include "isingc/exp_sum.hpp"
#include "isingc/models.hpp"
#include "isingc/tableau.hpp"

using namespace isingc;

namespace {

complex brute(const QuadraticForm& f) {
  static const complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complex s = 0.0;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << f.num_vars); ++z) s += ipow[f.evaluate(z)];
  return s;
}

}  // namespace

TEST(ExactSum, SmallCases) {
  QuadraticForm one(1);
  one.linear[0] = 1;  // 1 + i
  auto s = exact_quadratic_sum(one);
  EXPECT_LT(std::abs(s.to_complex() - complex(1, 1)), 1e-14);
  one.linear[0] = 2;  // 1 - 1
  EXPECT_TRUE(exact_quadratic_sum(one).zero);
  QuadraticForm empty(0);
  empty.constant = 3;
  EXPECT_LT(std::abs(exact_quadratic_sum(empty).to_complex() - complex(0, -1)), 1e-14);
}

TEST(ExactSum, MatchesEnumerationOnRandomForms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    int n = static_cast<int>(rng() % 11);
    QuadraticForm f(n);
    for (int j = 0; j < n; ++j) f.linear[j] = static_cast<int>(rng() % 4);
    f.constant = static_cast<int>(rng() % 4);
    double density = (rng() % 100) / 100.0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if ((rng() % 1000) < density * 1000) f.quadratic.emplace_back(a, b);
    complex expected = brute(f);
    ExactSum got = exact_quadratic_sum(f);
    if (std::abs(expected) < 1e-9) {
      EXPECT_TRUE(got.zero) << trial;
    } else {
      ASSERT_FALSE(got.zero) << trial;
      EXPECT_LT(std::abs(got.to_complex() - expected), 1e-9) << trial;
    }
  }
}

TEST(ExactSum, GraphStateOverlapMatchesDense) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 2) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
    auto psi = dense_vector(graph_state_tableau(adj));  // graph state has positive |0..0> amplitude
    std::vector<PauliBra> bras;
    std::vector<std::array<complex, 2>> w;
    const double r = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < n; ++q) {
      PauliBra b{static_cast<PauliBasis>(rng() % 3), (rng() % 2) ? 1 : -1};
      bras.push_back(b);
      if (b.basis == PauliBasis::X) w.push_back({r, b.sign * r});
      else if (b.basis == PauliBasis::Y) w.push_back({r, complex(0, -b.sign * r)});
      else w.push_back(b.sign > 0 ? std::array<complex, 2>{1.0, 0.0} : std::array<complex, 2>{0.0, 1.0});
    }
    complex expected = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      complex t = psi[i];
      for (int q = 0; q < n; ++q) t *= w[q][(i >> q) & 1U];
      expected += t;
    }
    auto got = graph_state_pauli_overlap(adj, bras);
    if (std::abs(expected) < 1e-12) {
      EXPECT_TRUE(got.zero);
    } else {
      EXPECT_LT(std::abs(got.to_complex() - expected), 1e-12) << trial;
    }
  }
}

TEST(ExactSum, LargeGridRunsQuickly) {
  Graph g = Graph::grid(60, 40);
  std::vector<PauliBra> bras(static_cast<std::size_t>(g.num_vertices()), PauliBra{PauliBasis::Y, 1});
  auto s = graph_state_pauli_overlap(g.adjacency(), bras);
  EXPECT_FALSE(s.zero && s.sqrt2_power != 0);
}
