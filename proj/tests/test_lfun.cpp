#include "tracelab/lfun.hpp"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

using namespace tracelab;

namespace {

std::string fixture(const std::string& name) { return std::string(TRACELAB_DATA_DIR) + "/fixtures/" + name; }

const CuspFormData& form(const std::string& name) {
  static std::map<std::string, CuspFormData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, with_harmonic_weight(load_fixture(fixture(name + ".json")))).first;
  return it->second;
}

ContinuationOptions options(double tol) {
  ContinuationOptions o;
  o.tol = tol;
  return o;
}

}  // namespace

TEST(DyadicWindowTest, PartitionOfUnity) {
  DyadicWindow g;
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double x = std::exp(-6.0 + 12.0 * i / 2000.0);
    double s = 0.0;
    for (int u = -30; u <= 30; ++u) s += g(std::ldexp(x, -u));
    worst = std::max(worst, std::abs(s - 1.0));
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_EQ(g(1.0), 0.0);
  EXPECT_EQ(g(4.0), 0.0);
  EXPECT_GT(g(2.0), 0.0);
}

TEST(DirichletL, RangeAndSymmetry) {
  const auto& d = form("delta");
  EXPECT_THROW(dirichlet_L(d, cplx(1.1, 0)), std::invalid_argument);
  EXPECT_THROW(dirichlet_L(d, cplx(2, 0), d.size() + 1), std::out_of_range);
  EXPECT_NEAR(dirichlet_L(d, cplx(2, 0)).value.imag(), 0.0, 1e-15);
  cplx s(2.0, 1.5);
  cplx dual = dirichlet_L_dual(form("4.5.b.a"), s).value;
  cplx prim = dirichlet_L(form("4.5.b.a"), std::conj(s)).value;
  EXPECT_LT(std::abs(dual - std::conj(prim)), 1e-14);
}

TEST(DirichletL, TruncationStable) {
  const auto& d = form("delta");
  auto a = dirichlet_L(d, cplx(2, 0), 10000);
  auto b = dirichlet_L(d, cplx(2, 0), 20000);
  EXPECT_LT(std::abs(a.value - b.value), 1e-8);
  EXPECT_GT(a.tail_bound, b.tail_bound);
}

TEST(Continuation, MatchesDirichletSeriesForTau) {
  HarmonicBasis b({form("delta")});
  auto o = options(1e-8);
  for (i64 ell : {1, 2}) {
    cplx cont = a_ell_continued(12, 1, trivial_character(1), ell, cplx(2, 0), o);
    EXPECT_LT(std::abs(cont - a_ell_spectral(b, ell, cplx(2, 0))), 1e-5) << ell;
  }
}

TEST(Continuation, MatchesDirichletSeriesLevelTwo) {
  HarmonicBasis b({form("2.8.a.a")});
  cplx s(1.6, 2.0);
  cplx cont = a_ell_continued(8, 2, trivial_character(2), 1, s, options(1e-8));
  EXPECT_LT(std::abs(cont - a_ell_spectral(b, 1, s)), 1e-5);
}

TEST(Continuation, DualAverageIsConjugate) {
  auto chi = character(7, 2);
  auto o = options(1e-7);
  for (cplx s : {cplx(0.5, 0.5), cplx(0.8, -1.0)}) {
    cplx a = a_ell_continued(6, 7, chi, 1, s, o);
    cplx b = a_ell_continued(6, 7, chi.conj(), 1, std::conj(s), o);
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-6) << s;
  }
}

TEST(Continuation, PieceDiagonal) {
  // X = 1/2, l = 1: the only n is 1 and I_s is g(2) 2^s times the weight.
  DyadicWindow g;
  cplx s(0.7, 0.2);
  cplx piece = i_s_geometric(12, 1, trivial_character(1), 1, s, 0.5, options(1e-9));
  cplx expect = *form("delta").harmonic_weight * g(2.0) * std::exp(-s * std::log(2.0));
  EXPECT_LT(std::abs(piece - expect), 1e-8);
}

TEST(Continuation, Preconditions) {
  EXPECT_THROW(a_ell_continued(6, 5, character(5, 2), 1, cplx(-1.5, 0)), std::invalid_argument);
  EXPECT_THROW(a_ell_continued(6, 5, character(5, 1), 1, cplx(0.5, 0)), std::invalid_argument);
  EXPECT_THROW(i_s_geometric(12, 1, trivial_character(1), 1, cplx(0.5, 0), 0.0), std::invalid_argument);
}

TEST(RootNumberTest, FixturesAreUnitary) {
  for (const char* name : {"delta", "2.8.a.a", "4.5.b.a", "5.4.a.a"}) {
    auto r = root_number(form(name));
    EXPECT_LT(r.modulus_deviation(), 1e-8) << name;
  }
  EXPECT_EQ(root_number(form("delta")).kind, RootCase::level_one);
  EXPECT_LT(std::abs(root_number(form("delta")).value - 1.0), 1e-15);
  const auto& f = form("5.4.a.a");
  EXPECT_LT(std::abs(root_number(f).value + std::sqrt(5.0) * f.a(5)), 1e-12);
  EXPECT_EQ(root_number(form("4.5.b.a")).kind, RootCase::primitive);
}

TEST(FunctionalEquation, Tau) {
  const auto& d = form("delta");
  auto o = options(1e-8);
  EXPECT_LT(fe_residual(d, cplx(0.5, 0), o).residual, 1e-10);
  auto fe = fe_residual(d, cplx(0.5, 0.3), o);
  EXPECT_LT(fe.residual, 1e-4);
  EXPECT_GT(std::abs(fe.lhs), 0.1);
}

TEST(FunctionalEquation, TrivialCharacterLevelTwo) {
  auto fe = fe_residual(form("2.8.a.a"), cplx(0.6, 0), options(1e-8));
  EXPECT_LT(fe.residual, 1e-3);
}

TEST(FunctionalEquation, PrimitiveCharacterLevelFour) {
  auto fe = fe_residual(form("4.5.b.a"), cplx(0.5, 0.2), options(1e-6));
  EXPECT_LT(fe.residual, 1e-3);
}

TEST(FunctionalEquation, WrongRootFails) {
  // flipping the sign of a(2) flips the root number of 2.8.a.a
  CuspFormData f = form("2.8.a.a");
  f.coeffs[1] = -f.coeffs[1];
  EXPECT_GT(fe_residual(f, cplx(0.6, 0), options(1e-7)).residual, 1e-2);
}

TEST(Isolate, OneDimensional) {
  HarmonicBasis b({form("delta")});
  auto r = isolate_lvalues(b, cplx(2, 0), options(1e-8));
  ASSERT_EQ(r.ells, std::vector<i64>{1});
  EXPECT_LT(std::abs(r.lvalues[0] - dirichlet_L(form("delta"), cplx(2, 0)).value), 1e-5);
}

TEST(Isolate, SyntheticTwoForms) {
  // the direct sum of the weight 12 and level 2 spaces
  std::vector<CuspFormData> forms{form("delta"), form("2.8.a.a")};
  cplx s(2, 0);
  auto o = options(1e-8);
  auto avg = [&](i64 ell) {
    cplx t{};
    for (const auto& f : forms) t += a_ell_continued(f.weight, f.level, f.character, ell, s, o);
    return t;
  };
  auto r = isolate_lvalues(forms, avg);
  ASSERT_EQ(r.ells.size(), 2u);
  EXPECT_LT(r.condition, 1e6);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    EXPECT_LT(std::abs(r.lvalues[i] - dirichlet_L(forms[i], s).value), 1e-4) << forms[i].label;
  }
}

TEST(Isolate, SingularBasisRejected) {
  std::vector<CuspFormData> forms{form("delta"), form("delta")};
  EXPECT_THROW(isolate_lvalues(forms, [](i64) { return cplx(1.0); }), std::runtime_error);
  EXPECT_THROW(isolate_lvalues(forms, [](i64) { return cplx(1.0); }, {1}), std::invalid_argument);
}
