#include "tracelab/forms.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <gtest/gtest.h>

#include "tracelab/arith.hpp"

using namespace tracelab;

namespace {

std::string fixture(const std::string& name) { return std::string(TRACELAB_DATA_DIR) + "/fixtures/" + name; }

// tau(n) for n <= 12 from the product q prod (1 - q^n)^24, expanded here independently.
std::vector<long long> tau_oracle(int N) {
  std::vector<long long> p(N + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= N; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int j = N; j >= n; --j) p[j] -= p[j - n];
    }
  }
  std::vector<long long> tau(N + 1, 0);
  for (int n = 1; n <= N; ++n) tau[n] = p[n - 1];
  return tau;
}

const char* kMinimal = R"({"label":"t","weight":12,"level":1,"character":{"modulus":1,"index":0},
  "an":[1,-24,252],"source":"test"})";

}  // namespace

class FixtureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    delta_ = new CuspFormData(load_fixture(fixture("delta.json")));
    level5_ = new CuspFormData(load_fixture(fixture("5.4.a.a.json")));
  }
  static void TearDownTestSuite() {
    delete delta_;
    delete level5_;
  }
  static CuspFormData* delta_;
  static CuspFormData* level5_;
};

CuspFormData* FixtureTest::delta_ = nullptr;
CuspFormData* FixtureTest::level5_ = nullptr;

TEST_F(FixtureTest, DeltaNormalisation) {
  EXPECT_EQ(delta_->weight, 12);
  EXPECT_EQ(delta_->level, 1);
  EXPECT_NEAR(delta_->a(2).real(), -24.0 / std::pow(2.0, 5.5), 1e-15);
  EXPECT_NEAR(delta_->a(2).real(), -0.53033, 1e-5);
  auto tau = tau_oracle(40);
  for (int n = 1; n <= 40; ++n) {
    double back = delta_->a(n).real() * std::pow(n, 5.5);
    EXPECT_NEAR(back, static_cast<double>(tau[n]), 1e-9 * std::abs(static_cast<double>(tau[n])) + 1e-9) << n;
  }
}

TEST_F(FixtureTest, AssumptionHoldsOnShippedFixtures) {
  for (const char* name : {"delta.json", "5.4.a.a.json", "2.8.a.a.json", "4.5.b.a.json"}) {
    CuspFormData f = load_fixture(fixture(name));
    AssumptionReport r = validate_assumption(f);
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_GT(r.clause1_checked, 0) << name;
    if (f.level > 1) {
      EXPECT_GT(r.clause2_checked, 0) << name;
    }
  }
}

TEST_F(FixtureTest, LevelFiveMultiplicativeAtBadPrime) {
  cplx a5 = level5_->a(5);
  EXPECT_NEAR(std::abs(level5_->a(25) - a5 * a5), 0.0, 1e-9 * std::abs(a5 * a5));
}

TEST_F(FixtureTest, DeligneScale) {
  for (const char* name : {"delta.json", "5.4.a.a.json", "2.8.a.a.json", "4.5.b.a.json"}) {
    CuspFormData f = load_fixture(fixture(name));
    auto spf = smallest_prime_factors(std::min<i64>(f.size(), 5000));
    for (i64 p = 2; p < static_cast<i64>(spf.size()); ++p) {
      if (spf[p] != p || f.level % p == 0) continue;
      EXPECT_LE(std::abs(f.a(p)), 2.0 + 1e-6) << name << " p=" << p;
    }
  }
}

TEST_F(FixtureTest, PrimitiveCharacterFixture) {
  CuspFormData f = load_fixture(fixture("4.5.b.a.json"));
  EXPECT_EQ(f.weight, 5);
  EXPECT_TRUE(f.character.is_primitive());
  EXPECT_EQ(f.character.parity(), -1);
  EXPECT_EQ(f.a(2).real() * std::pow(2.0, 2.0), -4.0);
}

TEST(ParseFixture, MinimalDocument) {
  CuspFormData f = parse_fixture(kMinimal);
  EXPECT_EQ(f.size(), 3);
  EXPECT_FALSE(f.harmonic_weight.has_value());
  EXPECT_THROW(f.a(4), std::out_of_range);
  EXPECT_THROW(f.a(0), std::out_of_range);
}

TEST(ParseFixture, CoefficientEncodings) {
  const char* doc = R"({"label":"t","weight":4,"level":1,"character":{"modulus":1,"index":0},
    "an":[1,[3,2],[0.5,1.5]],"source":"s","harmonic_weight":0.25})";
  CuspFormData f = parse_fixture(doc);
  EXPECT_NEAR(f.a(2).real(), 1.5 / std::pow(2.0, 1.5), 1e-15);
  EXPECT_NEAR(f.a(3).real(), 0.5 / std::pow(3.0, 1.5), 1e-15);
  EXPECT_NEAR(f.a(3).imag(), 1.5 / std::pow(3.0, 1.5), 1e-15);
  EXPECT_DOUBLE_EQ(*f.harmonic_weight, 0.25);
}

TEST(ParseFixture, CharacterByValues) {
  const char* doc = R"({"label":"t","weight":5,"level":4,
    "character":{"values":[[0,0],[1,0],[0,0],[-1,0]]},"an":[1,-4],"source":"s"})";
  CuspFormData f = parse_fixture(doc);
  EXPECT_EQ(f.character.index(), 1);
}

TEST(ParseFixture, Rejections) {
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":12,"level":1,"character":{"modulus":1,"index":0},
    "an":[2,-24],"source":"s"})"), FixtureError);
  // even weight, odd character mod 4
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":4,"level":4,"character":{"modulus":4,"index":1},
    "an":[1,-2],"source":"s"})"), FixtureError);
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":12,"level":1,"character":{"modulus":1,"index":0},
    "an":[1],"source":"s","extra":1})"), FixtureError);
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":12,"level":1,"character":{"modulus":1,"index":0},
    "an":[1]})"), FixtureError);
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":12,"level":1,"character":{"modulus":1,"index":0},
    "an":[1],"source":"s","harmonic_weight":-1})"), FixtureError);
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":4,"level":5,"character":{"modulus":5,"index":9},
    "an":[1],"source":"s"})"), FixtureError);
  EXPECT_THROW(parse_fixture(R"({"label":"t","weight":4,"level":5,"character":{"values":[[1,0],[1,0]]},
    "an":[1],"source":"s"})"), FixtureError);
  EXPECT_THROW(parse_fixture("{not json"), FixtureError);
  EXPECT_THROW(load_fixture("/nonexistent/x.json"), FixtureError);
}

TEST(ParseFixture, ParityMessageIsDescriptive) {
  try {
    parse_fixture(R"({"label":"bad","weight":4,"level":4,"character":{"modulus":4,"index":1},
      "an":[1,-2],"source":"s"})");
    FAIL();
  } catch (const FixtureError& e) {
    EXPECT_NE(std::string(e.what()).find("parity"), std::string::npos);
  }
}

TEST(ValidateAssumption, FlagsInjectedFault) {
  CuspFormData f = load_fixture(fixture("2.8.a.a.json"));
  f.coeffs.resize(200);
  f.coeffs[3] += 0.01;  // a(4)
  AssumptionReport r = validate_assumption(f);
  EXPECT_FALSE(r.passed());
  bool seen = false;
  for (auto [n, m] : r.clause2_violations) seen |= (n == 2 && m == 2) || (n == 1 && m == 4) || (n == 4 && m == 2);
  EXPECT_TRUE(seen);
}

TEST(ValidateAssumption, FlagsNonRealTrivialCharacter) {
  CuspFormData f = parse_fixture(kMinimal);
  f.coeffs[2] = cplx(f.coeffs[2].real(), 0.1);
  AssumptionReport r = validate_assumption(f);
  ASSERT_EQ(r.clause1_violations.size(), 1u);
  EXPECT_EQ(r.clause1_violations[0], 3);
}

TEST(ResolveFixture, HonoursEnvironment) {
  setenv("TRACE_LAB_FIXTURE_DIR", (std::string(TRACELAB_DATA_DIR) + "/fixtures").c_str(), 1);
  EXPECT_EQ(resolve_fixture("delta").substr(resolve_fixture("delta").size() - 10), "delta.json");
  EXPECT_THROW(resolve_fixture("no-such-form"), FixtureError);
  unsetenv("TRACE_LAB_FIXTURE_DIR");
}

TEST(HarmonicWeight, Delta) {
  auto triv = trivial_character(1);
  double w = harmonic_weight_dim1(12, 1, triv, 100);
  EXPECT_GT(w, 0.0);
  // Independent value from Gamma(11) / ((4 pi)^11 ||Delta||^2) with
  // ||Delta||^2 = 1.035362056804320922e-6.
  double ref = std::tgamma(11.0) / std::pow(4 * M_PI, 11) / 1.035362056804320922e-6;
  EXPECT_NEAR(w, ref, 1e-9 * ref);
  EXPECT_THROW(harmonic_weight_dim1(12, 1, triv, 1), std::runtime_error);
}

TEST(HarmonicWeight, LevelFiveWeightFour) {
  auto triv = trivial_character(5);
  i64 cmax = harmonic_weight_cmax(4, 5, triv);
  EXPECT_GT(cmax, 1000);
  double w = harmonic_weight_dim1(4, 5, triv, cmax);
  EXPECT_GT(w, 0.0);
  EXPECT_THROW(harmonic_weight_dim1(4, 5, character(5, 1), cmax), std::invalid_argument);
}

TEST(HarmonicBasis, SharedSpace) {
  CuspFormData a = parse_fixture(kMinimal);
  CuspFormData b = load_fixture(fixture("2.8.a.a.json"));
  EXPECT_THROW(HarmonicBasis({a, b}), std::invalid_argument);
  HarmonicBasis basis({a});
  EXPECT_EQ(basis.dimension(), 1);
  EXPECT_EQ(basis.weight(), 12);
  EXPECT_THROW(HarmonicBasis().weight(), std::logic_error);
}
