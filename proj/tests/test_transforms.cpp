#include "tracelab/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

using namespace tracelab;

TEST(Bump, Examples) {
  auto g = canonical_bump(1.0, 2.0);
  EXPECT_NEAR(g(1.5), std::exp(-1.0), 1e-15);
  EXPECT_EQ(g(1.0), 0.0);
  EXPECT_EQ(g(2.0), 0.0);
  EXPECT_EQ(g(0.3), 0.0);
  EXPECT_THROW(canonical_bump(2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(canonical_bump(0.0, 1.0), std::invalid_argument);
  auto f = [&](double x) { return g(x); };
  double i1 = integrate(f, 1.0, 2.0, 16, 16), i2 = integrate(f, 1.0, 2.0, 32, 16);
  EXPECT_GT(i1, 0.0);
  EXPECT_NEAR(i1, i2, 1e-10);
  // mpmath quadrature, tests/oracles/transforms_oracle.py
  EXPECT_NEAR(i2, 0.22199690808403971891, 1e-12);
}

TEST(Bump, Derivatives) {
  auto g = canonical_bump(1.0, 3.0);
  for (double x = 1.05; x < 2.96; x += 0.1) {
    double h = 1e-5;
    double d1 = (g(x + h) - g(x - h)) / (2 * h);
    double d2 = (g(x + h) - 2 * g(x) + g(x - h)) / (h * h);
    EXPECT_NEAR(g.derivative(x, 1), d1, 1e-8);
    EXPECT_NEAR(g.derivative(x, 2), d2, 1e-4);
    double h3 = 1e-4;
    double d3 = (g.derivative(x + h3, 2) - g.derivative(x - h3, 2)) / (2 * h3);
    EXPECT_NEAR(g.derivative(x, 3), d3, 1e-4 * std::max(1.0, std::abs(d3)));
    EXPECT_TRUE(std::isfinite(g.derivative(x, 4)));
  }
  EXPECT_EQ(g.derivative(0.5, 2), 0.0);
}

TEST(Hankel, FrozenValues) {
  QuadratureConfig cfg;
  auto g = canonical_bump(1.0, 2.0);
  EXPECT_NEAR(hankel(6, g, 0.5, cfg), -0.28271510190128867953, 1e-12);
  EXPECT_NEAR(hankel(6, g, 3.0, cfg), 0.022622159830111569547, 1e-12);
  EXPECT_NEAR(hankel(12, g, 20.0, cfg), 0.0021465818360788354315, 1e-12);
  EXPECT_NEAR(hankel(4, canonical_bump(1.0, 9.0), 7.5, cfg), -0.0012710702532962569066, 1e-12);
}

TEST(Hankel, SmallArgumentBound) {
  QuadratureConfig cfg;
  auto g = canonical_bump(1.0, 2.0);
  int k = 6;
  // |J_nu(y)| <= (y/2)^nu / nu! gives C = 2 pi int g(x) (2 pi sqrt x)^{k-1} dx / (k-1)!.
  double C = two_pi / std::tgamma(k) *
             integrate([&](double x) { return g(x) * std::pow(two_pi * std::sqrt(x), k - 1); }, 1.0, 2.0,
                       32, 16);
  for (double a : {1e-4, 1e-3, 1e-2}) {
    double ratio = std::abs(hankel(k, g, a, cfg)) / std::pow(a, 0.5 * (k - 1));
    EXPECT_LE(ratio, C);
    EXPECT_GT(ratio, 0.8 * C);
  }
}

TEST(Hankel, RapidDecay) {
  QuadratureConfig cfg;
  auto g = canonical_bump(1.0, 2.0);
  EXPECT_LE(std::abs(hankel(6, g, 1e4, cfg)), 1e-8);
  auto est = hankel_estimate(6, g, 1e4, cfg);
  EXPECT_LT(est.error, cfg.target_abs_error);
}

TEST(Hankel, DerivativeGrowth) {
  QuadratureConfig cfg;
  auto g = canonical_bump(1.0, 2.0);
  int k = 6;
  auto deriv = [&](double a) {
    double h = 1e-3 * a;
    return (hankel(k, g, a + h, cfg) - hankel(k, g, a - h, cfg)) / (2 * h);
  };
  double C = std::abs(deriv(1e-3)) / std::pow(1e-3, 0.5 * (k - 3));
  for (double a = 1e-4; a < 1.0; a *= 1.5) {
    EXPECT_LE(std::abs(deriv(a)), 1.05 * C * std::pow(a, 0.5 * (k - 3))) << a;
  }
}

TEST(Hankel, RoundTrip) {
  QuadratureConfig cfg;
  cfg.target_abs_error = 1e-8;
  auto g = canonical_bump(1.0, 2.0);
  auto v = hankel_roundtrip(6, g, std::vector<double>{1.5, 1.25, 3.0}, cfg, 1e4);
  EXPECT_NEAR(v[0], std::exp(-1.0), 1e-6);
  EXPECT_NEAR(v[1], g(1.25), 1e-6);
  EXPECT_NEAR(v[2], 0.0, 1e-6);
  EXPECT_NEAR(hankel_roundtrip(4, g, 1.25, cfg, 1e4), g(1.25), 1e-6);
  EXPECT_THROW(hankel_roundtrip(6, g, 1.5, cfg, 10.0), std::runtime_error);
}

TEST(Weber, Examples) {
  QuadratureConfig cfg;
  {
    auto [l, r] = weber_check(4, 1.0, 0.3, 0.3, cfg);
    EXPECT_LT(std::abs(l - r), 1e-8 * (1 + std::abs(r)));
  }
  {
    auto [l, r] = weber_check(6, cplx(2.0, 1.0), 0.2, 0.5, cfg);
    EXPECT_LT(std::abs(l - r), 1e-8 * (1 + std::abs(r)));
  }
  {
    auto [l, r] = weber_check(4, 1.0, 1e-6, 0.4, cfg);
    EXPECT_LT(std::abs(l), 1e-10);
    EXPECT_LT(std::abs(r), 1e-10);
  }
  EXPECT_THROW(weber_check(4, cplx(0.0, 1.0), 0.3, 0.3, cfg), std::invalid_argument);
}

TEST(Poisson, Examples) {
  QuadratureConfig cfg;
  auto V = canonical_bump(1.0, 2.0);
  {
    auto [l, r] = poisson_check({cplx(1.0)}, V, 10.0, 12, cfg);
    EXPECT_LT(std::abs(l - r), 1e-8);
  }
  {
    std::vector<cplx> K = {e(0.0), e(1.0 / 3), e(2.0 / 3)};
    auto [l, r] = poisson_check(K, V, 10.0, 36, cfg);
    EXPECT_LT(std::abs(l - r), 1e-8);
  }
  {
    auto [l, r] = poisson_check({cplx(1.0)}, V, 0.4, 250, cfg);
    EXPECT_EQ(l, cplx(0.0));
    EXPECT_LT(std::abs(r), 1e-8);
  }
}
