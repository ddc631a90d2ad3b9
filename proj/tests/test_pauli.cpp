#include <gtest/gtest.h>

#include "isingc/pauli.hpp"

using namespace isingc;

namespace {
PauliOperator P(const char* s) { return PauliOperator::from_string(s); }
}  // namespace

TEST(Pauli, ParsesAndPrints) {
  EXPECT_EQ(P("+XIZ").to_string(), "+XIZ");
  EXPECT_EQ(P("-YY").to_string(), "-YY");
  EXPECT_EQ(P("iZ").to_string(), "+iZ");
  EXPECT_THROW(P("XQ"), std::invalid_argument);
}

TEST(Pauli, SingleQubitAlgebra) {
  EXPECT_EQ((P("X") * P("Y")).to_string(), "+iZ");
  EXPECT_EQ((P("Y") * P("X")).to_string(), "-iZ");
  EXPECT_EQ((P("Z") * P("X")).to_string(), "+iY");
  EXPECT_EQ((P("Y") * P("Y")).to_string(), "+I");
  EXPECT_FALSE(P("X").commutes_with(P("Z")));
  EXPECT_TRUE(P("XX").commutes_with(P("ZZ")));
}

TEST(Pauli, HermitianAndInverse) {
  EXPECT_TRUE(P("-XYZ").is_hermitian());
  EXPECT_EQ(P("-XYZ").hermitian_sign(), -1);
  EXPECT_FALSE(P("iX").is_hermitian());
  auto a = P("iXYZ");
  EXPECT_TRUE((a * a.inverse()).is_identity_up_to_phase());
  EXPECT_EQ((a * a.inverse()).phase(), 0);
}

TEST(Pauli, ConjugationRules) {
  auto x = P("X");
  x.conjugate_h(0);
  EXPECT_EQ(x.to_string(), "+Z");
  auto y = P("Y");
  y.conjugate_h(0);
  EXPECT_EQ(y.to_string(), "-Y");
  auto sx = P("X");
  sx.conjugate_s(0);
  EXPECT_EQ(sx.to_string(), "+Y");
  sx.conjugate_s(0);
  EXPECT_EQ(sx.to_string(), "-X");
  auto xi = P("XI");
  xi.conjugate_cz(0, 1);
  EXPECT_EQ(xi.to_string(), "+XZ");
  auto xx = P("XX");
  xx.conjugate_cz(0, 1);
  EXPECT_EQ(xx.to_string(), "+YY");
}

TEST(Pauli, DenseApplyMatchesMatrices) {
  std::vector<complex> e0{1.0, 0.0};
  auto y0 = P("Y").apply(e0);  // Y|0> = i|1>
  EXPECT_NEAR(std::abs(y0[1] - complex(0, 1)), 0.0, 1e-15);
  std::vector<complex> e1{0.0, 1.0};
  auto z1 = P("Z").apply(e1);
  EXPECT_NEAR(z1[1].real(), -1.0, 1e-15);
}

TEST(Pauli, LocalCliffordMatchesGateRules) {
  LocalCliffordOp op(2);
  op.factors[0] = SingleCliffordImage::hadamard();
  op.factors[1] = SingleCliffordImage::s_power(1);
  for (const char* s : {"XX", "YZ", "ZY", "YY"}) {
    auto a = P(s), b = P(s);
    op.conjugate(a);
    b.conjugate_h(0);
    b.conjugate_s(1);
    EXPECT_EQ(a, b) << s;
  }
  EXPECT_TRUE(SingleCliffordImage::s_power(3).valid());
}

TEST(Pauli, WideOperators) {
  PauliOperator a(130), b(130);
  a.set_x(129, true);
  b.set_z(129, true);
  EXPECT_FALSE(a.commutes_with(b));
  EXPECT_EQ((a * b).weight(), 1);
  EXPECT_EQ((a * b).y_count(), 1);
}
