#pragma once

#include <utility>
#include <vector>

#include "tracelab/common.hpp"

namespace tracelab {

// Smooth function supported in [lower(), upper()] with 0 < lower < upper.
class TestFunction {
 public:
  virtual ~TestFunction() = default;
  virtual double operator()(double x) const = 0;
  virtual double lower() const = 0;
  virtual double upper() const = 0;
};

// t -> exp(-1/(1-u^2)), u = (2t-a-b)/(b-a), on (a, b); zero elsewhere.
class BumpFunction : public TestFunction {
 public:
  BumpFunction(double a, double b);

  double operator()(double x) const override;
  double lower() const override { return a_; }
  double upper() const override { return b_; }
  double center() const { return 0.5 * (a_ + b_); }
  double width() const { return b_ - a_; }

  // Orders 0..2 in closed form; higher orders by Richardson-extrapolated
  // central differences of the second derivative.
  double derivative(double x, int order) const;

 private:
  double a_, b_;
};

BumpFunction canonical_bump(double a, double b);

struct QuadratureConfig {
  int panels = 24;
  int points_per_panel = 16;
  // Bessel arguments above this count as oscillatory and get
  // wavelength-sized panels.
  double oscillatory_split_threshold = 20.0;
  double target_abs_error = 1e-10;

  void validate() const;
};

// Integral of f over [lo, hi] with composite Gauss-Legendre on `panels` panels.
double integrate(const std::function<double(double)>& f, double lo, double hi, int panels, int ppp);
cplx integrate_complex(const std::function<cplx(double)>& f, double lo, double hi, int panels, int ppp);

// (H_k F)(a) = 2 pi int F(x) J_{k-1}(4 pi sqrt(a x)) dx.
double hankel(int k, const TestFunction& F, double a, const QuadratureConfig& cfg);

struct QuadEstimate {
  double value = 0.0;
  double error = 0.0;  // change when points_per_panel is doubled
};
QuadEstimate hankel_estimate(int k, const TestFunction& F, double a, const QuadratureConfig& cfg);

// (H_k H_k F)(b) with the outer integral cut at a = tail_cut. Throws
// std::runtime_error when |H_k F| has not decayed below the target there.
double hankel_roundtrip(int k, const TestFunction& F, double b, const QuadratureConfig& cfg,
                        double tail_cut);
std::vector<double> hankel_roundtrip(int k, const TestFunction& F, const std::vector<double>& bs,
                                     const QuadratureConfig& cfg, double tail_cut);

// Both sides of Weber's integral for a pair of Bessel functions under a
// Gaussian damping e^{-2 pi alpha y}.
std::pair<cplx, cplx> weber_check(int k, cplx alpha, double beta, double gamma,
                                  const QuadratureConfig& cfg);

// Both sides of Poisson summation for sum_n K(n) V(n/X) with K periodic of
// period K.size(); the dual side keeps |m| <= mmax.
std::pair<cplx, cplx> poisson_check(const std::vector<cplx>& K, const TestFunction& V, double X,
                                    i64 mmax, const QuadratureConfig& cfg);

}  // namespace tracelab
