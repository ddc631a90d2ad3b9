#include <gtest/gtest.h>

#include <random>

#include "isingc/lattice.hpp"

using namespace isingc;

namespace {

Ising2DInstance random_instance(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto c = [&] { return complex(u(rng), u(rng)); };
  Ising2DInstance inst = Ising2DInstance::uniform(w, h, 1.0, 1.0);
  for (auto& e : inst.edges) e = {e.a, e.b, std::exp(c()), std::exp(c())};
  for (auto& s : inst.sites) {
    switch (rng() % 4) {
      case 0: s = {1.0, 0.0}; break;
      case 1: s = {0.0, 1.0}; break;
      case 2: s = {1.0, 1.0}; break;
      default: s = {std::exp(c()), std::exp(c())}; break;
    }
  }
  inst.global_scale = ScaledComplex(c());
  return inst;
}

}  // namespace

TEST(Lattice, SingleSite) {
  auto inst = Ising2DInstance::uniform(1, 1, 1.0, 1.0, complex(2.0, 1.0), complex(-0.5, 3.0));
  EXPECT_LT(std::abs(eval_brute(inst).to_complex() - complex(1.5, 4.0)), 1e-14);
  EXPECT_LT(std::abs(eval_transfer_matrix(inst).value.to_complex() - complex(1.5, 4.0)), 1e-14);
}

TEST(Lattice, TwoByTwoClosedForm) {
  double k = 0.3;
  auto inst = Ising2DInstance::uniform(2, 2, std::exp(k), std::exp(-k));
  double expected = 2 * std::exp(4 * k) + 12 + 2 * std::exp(-4 * k);
  EXPECT_LT(relative_error(eval_brute(inst), ScaledComplex(expected)), 1e-13);
  EXPECT_LT(relative_error(eval_transfer_matrix(inst).value, ScaledComplex(expected)), 1e-13);
}

TEST(Lattice, ChainClosedForm) {
  for (int n = 1; n <= 12; ++n) {
    double k = 0.7;
    auto inst = Ising2DInstance::uniform(1, n, std::exp(k), std::exp(-k));
    double expected = 2.0 * std::pow(2.0 * std::cosh(k), n - 1);
    EXPECT_LT(relative_error(eval_transfer_matrix(inst).value, ScaledComplex(expected)), 1e-12) << n;
    EXPECT_LT(relative_error(eval_transfer_matrix(inst.transpose()).value, ScaledComplex(expected)), 1e-12) << n;
  }
}

TEST(Lattice, TransferMatchesBruteOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    int w = 1 + static_cast<int>(rng() % 4), h = 1 + static_cast<int>(rng() % 5);
    auto inst = random_instance(rng, w, h);
    auto brute = eval_brute(inst);
    if (brute.is_zero()) continue;
    EXPECT_LT(relative_error(eval_transfer_matrix(inst).value, brute), 1e-10) << w << "x" << h;
  }
}

TEST(Lattice, TranspositionInvariance) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_instance(rng, 3, 5);
    auto t = inst.transpose();
    EXPECT_NO_THROW(t.validate());
    EXPECT_EQ(t.transpose(), inst);
    EXPECT_LT(relative_error(eval_brute(t), eval_brute(inst)), 1e-12);
  }
}

TEST(Lattice, FixedSpinConditionsTheSum) {
  std::mt19937_64 rng(8);
  auto inst = random_instance(rng, 3, 3);
  for (auto& s : inst.sites) s = {1.0, 1.0};
  auto pinned = inst;
  pinned.sites[4] = {1.0, 0.0};
  auto flipped = inst;
  flipped.sites[4] = {0.0, 1.0};
  EXPECT_EQ(pinned.sites[4].fixed_spin(), 1);
  EXPECT_LT(relative_error(eval_brute(pinned) + eval_brute(flipped), eval_brute(inst)), 1e-12);
}

TEST(Lattice, ScaleLinearity) {
  std::mt19937_64 rng(10);
  auto inst = random_instance(rng, 2, 3);
  auto scaled = inst;
  complex c(0.3, -2.0);
  scaled.edges[2].u0 *= c;
  scaled.edges[2].u1 *= c;
  EXPECT_LT(relative_error(eval_transfer_matrix(scaled).value, eval_transfer_matrix(inst).value * c), 1e-12);
}

TEST(Lattice, ExtremeWeightsDoNotOverflow) {
  auto inst = Ising2DInstance::uniform(6, 30, std::exp(complex(300.0, 0.1)), 1.0);
  auto rep = eval_transfer_matrix(inst);
  EXPECT_FALSE(rep.value.is_zero());
  EXPECT_GT(rep.value.log2_abs(), 300.0 * inst.edges.size() / std::log(2.0) - 1.0);
}

TEST(Lattice, ValidationAndBounds) {
  auto inst = Ising2DInstance::uniform(2, 2, 1.0, 1.0);
  auto bad = inst;
  bad.edges[0].b = 3;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.sites[0] = {0.0, 0.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(eval_brute(Ising2DInstance::uniform(5, 5, 1.0, 1.0)), SizeBoundError);
  EXPECT_THROW(eval_transfer_matrix(Ising2DInstance::uniform(23, 23, 1.0, 1.0)), SizeBoundError);
}

TEST(Lattice, CouplingsView) {
  double k = 0.25;
  auto inst = Ising2DInstance::uniform(2, 1, std::exp(k), std::exp(-k), 1.0, 0.0);
  auto v = inst.couplings_view();
  EXPECT_NEAR(v.couplings[0]->real(), k, 1e-14);
  EXPECT_FALSE(v.fields[0].has_value());
}
