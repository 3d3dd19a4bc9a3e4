#include "tracelab/voronoi.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "tracelab/forms.hpp"

using namespace tracelab;

namespace {

std::string fixture(const std::string& name) { return std::string(TRACELAB_DATA_DIR) + "/fixtures/" + name; }

const BumpFunction& window() {
  static const BumpFunction g(1.0, 9.0);
  return g;
}

VoronoiOptions options(double tol) {
  VoronoiOptions o;
  o.tol = tol;
  return o;
}

}  // namespace

TEST(VoronoiCaseTest, Classification) {
  EXPECT_EQ(voronoi_case(12, 1, trivial_character(1)), VoronoiCase::level_one);
  EXPECT_EQ(voronoi_case(6, 5, character(5, 2)), VoronoiCase::primitive);
  EXPECT_EQ(voronoi_case(6, 6, trivial_character(6)), VoronoiCase::trivial_squarefree);
  EXPECT_THROW(voronoi_case(6, 4, trivial_character(4)), std::invalid_argument);
  // odd character in even weight
  EXPECT_THROW(voronoi_case(6, 5, character(5, 1)), std::invalid_argument);
  // imprimitive and nontrivial: chi_{-4} lifted to modulus 8
  int lifted = -1;
  auto chars = build_characters(8);
  for (const auto& c : chars)
    if (!c.is_trivial() && !c.is_primitive() && c.parity() == -1) lifted = c.index();
  ASSERT_GE(lifted, 0);
  EXPECT_THROW(voronoi_case(5, 8, character(8, lifted)), std::invalid_argument);
}

TEST(VoronoiGeometric, PrimitiveLevelFive) {
  auto chk = verify_voronoi_geometric(6, 5, character(5, 2), 1, window(), options(1e-7));
  EXPECT_LT(chk.residual, 1e-5);
  EXPECT_TRUE(chk.passed()) << chk.residual << " vs " << chk.budget;
  EXPECT_FALSE(chk.lhs.capped);
}

TEST(VoronoiGeometric, PrimitiveLevelSevenComplexCharacter) {
  auto chi = character(7, 2);
  ASSERT_FALSE(chi.is_real());
  auto chk = verify_voronoi_geometric(6, 7, chi, 14, window(), options(1e-7));
  EXPECT_LT(chk.residual, 1e-5);
  EXPECT_GT(std::abs(chk.lhs.value.imag()), 1e-6);
}

TEST(VoronoiGeometric, TrivialCharacterSquareFree) {
  auto chk = verify_voronoi_geometric(6, 5, trivial_character(5), 5, window(), options(1e-7));
  EXPECT_LT(chk.residual, 1e-5);
  EXPECT_TRUE(chk.passed()) << chk.residual << " vs " << chk.budget;
}

TEST(VoronoiGeometric, LevelOneAgainstTau) {
  HarmonicBasis delta({with_harmonic_weight(load_fixture(fixture("delta.json")))});
  auto o = options(1e-8);
  for (i64 ell : {1, 3}) {
    cplx lhs = voronoi_spectral_lhs(delta, ell, window());
    auto init = voronoi_geometric_initial(12, 1, trivial_character(1), ell, window(), o);
    auto fin = voronoi_geometric_final(12, 1, trivial_character(1), ell, window(), o);
    EXPECT_LT(std::abs(init.value - lhs), 1e-6) << ell;
    EXPECT_LT(std::abs(fin.value - lhs), 1e-6) << ell;
  }
}

TEST(VoronoiGeometric, LevelOneGroupingsAgree) {
  auto gr = voronoi_level_one_groupings(12, 2, window(), options(1e-8));
  EXPECT_LT(std::abs(gr.separated - gr.absorbed), 1e-10);
}

TEST(VoronoiSpectral, LevelTwoDualSide) {
  HarmonicBasis b({with_harmonic_weight(load_fixture(fixture("2.8.a.a.json")))});
  auto o = options(1e-8);
  o.nmax = b[0].size() / 2;
  auto chk = verify_voronoi_spectral(b, 1, window(), o);
  EXPECT_TRUE(chk.passed()) << chk.residual << " vs " << chk.budget;
  EXPECT_LT(chk.residual, 1e-9);
}

TEST(VoronoiSpectral, ShortFixtureIsReported) {
  HarmonicBasis b({with_harmonic_weight(load_fixture(fixture("4.5.b.a.json")))});
  EXPECT_THROW(voronoi_spectral_rhs(b, 8, window(), 100000, QuadratureConfig{}), std::out_of_range);
}

TEST(HankelTable, TailShrinksWithN) {
  QuadratureConfig cfg;
  i64 n1 = hankel_nmax(6, window(), 5, 1e-6, cfg);
  i64 n2 = hankel_nmax(6, window(), 5, 1e-9, cfg);
  EXPECT_LE(n1, n2);
  auto h = hankel_table(6, window(), 5, 50, cfg);
  ASSERT_EQ(h.size(), 50u);
  EXPECT_DOUBLE_EQ(h[9], hankel(6, window(), 2.0, cfg));
}

TEST(VoronoiPreconditions, Rejects) {
  EXPECT_THROW(voronoi_geometric_initial(6, 5, character(5, 2), 0, window()), std::invalid_argument);
  EXPECT_THROW(voronoi_geometric_final(2, 1, trivial_character(1), 1, window()), std::invalid_argument);
}
