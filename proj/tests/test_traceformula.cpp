#include "tracelab/traceformula.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "tracelab/forms.hpp"

using namespace tracelab;

namespace {

std::string fixture(const std::string& name) { return std::string(TRACELAB_DATA_DIR) + "/fixtures/" + name; }

}  // namespace

class PeterssonTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    delta_ = new HarmonicBasis({with_harmonic_weight(load_fixture(fixture("delta.json")))});
    level2_ = new HarmonicBasis({with_harmonic_weight(load_fixture(fixture("2.8.a.a.json")))});
  }
  static void TearDownTestSuite() {
    delete delta_;
    delete level2_;
  }
  static HarmonicBasis* delta_;
  static HarmonicBasis* level2_;
};

HarmonicBasis* PeterssonTest::delta_ = nullptr;
HarmonicBasis* PeterssonTest::level2_ = nullptr;

TEST_F(PeterssonTest, DiagonalIsHarmonicWeight) {
  auto triv = trivial_character(1);
  TruncationReport r = petersson_geometric(12, 1, triv, 1, 1, 100);
  EXPECT_DOUBLE_EQ(r.value.real(), harmonic_weight_dim1(12, 1, triv, 100));
  EXPECT_NEAR(std::abs(petersson_spectral(*delta_, 1, 1) - r.value), 0.0, 1e-10);
}

TEST_F(PeterssonTest, DeltaGrid) {
  auto triv = trivial_character(1);
  for (i64 m = 1; m <= 10; ++m) {
    for (i64 n = 1; n <= 10; ++n) {
      PeterssonCheck c = verify_petersson(*delta_, 12, 1, triv, m, n, 400);
      EXPECT_LT(c.residual, 1e-10) << m << "," << n;
      EXPECT_TRUE(c.passed()) << m << "," << n;
    }
  }
}

TEST_F(PeterssonTest, SpectralProducts) {
  double w = *(*delta_)[0].harmonic_weight;
  cplx s = petersson_spectral(*delta_, 2, 3);
  EXPECT_NEAR(s.real(), w * (-24.0) * 252.0 / std::pow(6.0, 5.5), 1e-14);
  EXPECT_EQ(petersson_spectral(HarmonicBasis(), 2, 3), cplx(0.0));
  EXPECT_THROW(petersson_spectral(*delta_, 1, 1000000), std::out_of_range);
  HarmonicBasis bare({load_fixture(fixture("delta.json"))});
  EXPECT_THROW(petersson_spectral(bare, 1, 1), std::invalid_argument);
}

TEST_F(PeterssonTest, LevelTwoWeightEightGrid) {
  auto triv = trivial_character(2);
  i64 cmax = 2000;
  for (i64 m = 1; m <= 10; ++m) {
    for (i64 n = 1; n <= 10; ++n) {
      PeterssonCheck c = verify_petersson(*level2_, 8, 2, triv, m, n, cmax);
      EXPECT_LT(c.residual, 1e-9) << m << "," << n;
      EXPECT_TRUE(c.passed()) << m << "," << n;
    }
  }
}

TEST_F(PeterssonTest, DetectsPerturbedCoefficient) {
  CuspFormData f = (*delta_)[0];
  f.coeffs[1] += 0.01;
  HarmonicBasis bad({f});
  auto triv = trivial_character(1);
  PeterssonCheck c = verify_petersson(bad, 12, 1, triv, 1, 2, 400);
  EXPECT_GT(c.residual, 1e-3);
  EXPECT_FALSE(c.passed());
}

TEST(PeterssonGeometric, HermitianSymmetry) {
  for (int idx : {1, 2, 3}) {
    auto chi = character(5, idx);
    int k = chi.parity() == 1 ? 6 : 5;
    for (auto [m, n] : {std::pair<i64, i64>{1, 2}, {3, 7}, {4, 10}}) {
      cplx a = petersson_geometric(k, 5, chi, m, n, 300).value;
      cplx b = petersson_geometric(k, 5, chi, n, m, 300).value;
      EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12) << idx << " " << m << "," << n;
    }
  }
}

TEST(PeterssonGeometric, RealCharacterLevelFive) {
  auto chi = character(5, 2);
  ASSERT_TRUE(chi.is_real());
  TruncationReport r = petersson_geometric(6, 5, chi, 1, 1, 200);
  EXPECT_TRUE(std::isfinite(r.value.real()));
  EXPECT_LT(r.tail_bound, 1e-7);
  TruncationReport big = petersson_geometric(6, 5, chi, 1, 1, 4000);
  EXPECT_LT(big.tail_bound, 1e-12);
  EXPECT_LE(std::abs(big.value - r.value), r.tail_bound);
}

TEST(PeterssonGeometric, TailMonotoneAndValueStable) {
  auto triv = trivial_character(5);
  double prev = 1e300;
  TruncationReport ref = petersson_geometric(4, 5, triv, 2, 3, 200000);
  for (i64 cmax : {500, 2000, 8000, 32000}) {
    TruncationReport r = petersson_geometric(4, 5, triv, 2, 3, cmax);
    EXPECT_LT(r.tail_bound, prev);
    prev = r.tail_bound;
    EXPECT_LE(std::abs(r.value - ref.value), r.tail_bound + ref.tail_bound);
  }
}

TEST(PeterssonGeometric, Preconditions) {
  EXPECT_THROW(petersson_geometric(4, 5, character(5, 1), 1, 1, 100), std::invalid_argument);
  EXPECT_THROW(petersson_geometric(2, 1, trivial_character(1), 1, 1, 100), std::invalid_argument);
  EXPECT_THROW(petersson_geometric(4, 5, trivial_character(5), 1, 1, 4), std::invalid_argument);
  EXPECT_THROW(petersson_geometric(4, 5, trivial_character(4), 1, 1, 100), std::invalid_argument);
}
