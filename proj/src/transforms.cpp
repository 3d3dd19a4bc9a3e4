#include "tracelab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tracelab/specfun.hpp"

namespace tracelab {

BumpFunction::BumpFunction(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(a < b)) {
    std::ostringstream os;
    os << "canonical_bump: need 0 < a < b, got [" << a << ", " << b << "]";
    throw std::invalid_argument(os.str());
  }
}

double BumpFunction::operator()(double x) const {
  if (x <= a_ || x >= b_) return 0.0;
  double u = (2.0 * x - a_ - b_) / (b_ - a_);
  return std::exp(-1.0 / (1.0 - u * u));
}

double BumpFunction::derivative(double x, int order) const {
  if (order < 0) throw std::invalid_argument("BumpFunction::derivative: negative order");
  if (order == 0) return (*this)(x);
  if (x <= a_ || x >= b_) return 0.0;
  double du = 2.0 / (b_ - a_);
  double u = (2.0 * x - a_ - b_) / (b_ - a_);
  double w = 1.0 - u * u;
  double g = std::exp(-1.0 / w);
  double p1 = -2.0 * u / (w * w);
  if (order == 1) return g * p1 * du;
  double p2 = -2.0 / (w * w) - 8.0 * u * u / (w * w * w);
  if (order == 2) return g * (p1 * p1 + p2) * du * du;
  // Richardson extrapolation on the central difference of order-1.
  auto cd = [&](double h) {
    return (derivative(x + h, order - 1) - derivative(x - h, order - 1)) / (2.0 * h);
  };
  double h = 1e-3 * (b_ - a_);
  double d1 = cd(h), d2 = cd(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

BumpFunction canonical_bump(double a, double b) { return BumpFunction(a, b); }

void QuadratureConfig::validate() const {
  if (panels <= 0 || points_per_panel <= 0 || !(oscillatory_split_threshold > 0.0) ||
      !(target_abs_error > 0.0)) {
    throw std::invalid_argument("QuadratureConfig: all fields must be positive");
  }
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int panels, int ppp) {
  const auto& gl = gauss_legendre(ppp);
  double h = (hi - lo) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double mid = lo + (p + 0.5) * h;
    double part = 0.0;
    for (int i = 0; i < ppp; ++i) part += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
    acc += 0.5 * h * part;
  }
  return acc;
}

cplx integrate_complex(const std::function<cplx(double)>& f, double lo, double hi, int panels, int ppp) {
  const auto& gl = gauss_legendre(ppp);
  double h = (hi - lo) / panels;
  cplx acc{};
  for (int p = 0; p < panels; ++p) {
    double mid = lo + (p + 0.5) * h;
    cplx part{};
    for (int i = 0; i < ppp; ++i) part += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
    acc += 0.5 * h * part;
  }
  return acc;
}

namespace {

int hankel_panels(double a, const TestFunction& F, const QuadratureConfig& cfg) {
  double ta = std::sqrt(F.lower()), tb = std::sqrt(F.upper());
  double beta = 4.0 * pi * std::sqrt(a);
  if (beta * tb <= cfg.oscillatory_split_threshold) return cfg.panels;
  double oscillations = beta * (tb - ta) / two_pi;
  return cfg.panels + static_cast<int>(std::ceil(2.0 * oscillations));
}

double hankel_with(int k, const TestFunction& F, double a, int panels, int ppp) {
  double beta = 4.0 * pi * std::sqrt(a);
  auto f = [&](double t) { return F(t * t) * bessel_j(k - 1, beta * t) * 2.0 * t; };
  return two_pi * integrate(f, std::sqrt(F.lower()), std::sqrt(F.upper()), panels, ppp);
}

}  // namespace

double hankel(int k, const TestFunction& F, double a, const QuadratureConfig& cfg) {
  cfg.validate();
  if (k < 2) throw std::invalid_argument("hankel: weight must be >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("hankel: a must be positive");
  return hankel_with(k, F, a, hankel_panels(a, F, cfg), cfg.points_per_panel);
}

QuadEstimate hankel_estimate(int k, const TestFunction& F, double a, const QuadratureConfig& cfg) {
  QuadEstimate q;
  q.value = hankel(k, F, a, cfg);
  QuadratureConfig fine = cfg;
  fine.points_per_panel *= 2;
  q.error = std::abs(hankel(k, F, a, fine) - q.value);
  return q;
}

std::vector<double> hankel_roundtrip(int k, const TestFunction& F, const std::vector<double>& bs,
                                     const QuadratureConfig& cfg, double tail_cut) {
  cfg.validate();
  double tail = 0.0;
  for (double f : {0.8, 0.9, 1.0}) tail = std::max(tail, std::abs(hankel(k, F, f * tail_cut, cfg)));
  if (tail >= cfg.target_abs_error) {
    std::ostringstream os;
    os << "hankel_roundtrip: |H_k F| near tail_cut = " << tail_cut << " is " << tail
       << ", above target " << cfg.target_abs_error << "; increase tail_cut";
    throw std::runtime_error(os.str());
  }
  double bmax = 0.0;
  for (double b : bs) {
    if (!(b > 0.0)) throw std::invalid_argument("hankel_roundtrip: b must be positive");
    bmax = std::max(bmax, b);
  }
  // a = r^2; sample H_k F once on the outer grid and reuse it for every b.
  double R = std::sqrt(tail_cut);
  double freq = 2.0 * (std::sqrt(F.upper()) + std::sqrt(bmax));
  int panels = cfg.panels + static_cast<int>(std::ceil(2.0 * freq * R));
  int ppp = cfg.points_per_panel;
  const auto& gl = gauss_legendre(ppp);
  double h = R / panels;
  i64 n = static_cast<i64>(panels) * ppp;
  std::vector<double> r(n), w(n), hv(n);
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < ppp; ++i) {
      r[p * ppp + i] = (p + 0.5) * h + 0.5 * h * gl.nodes[i];
      w[p * ppp + i] = 0.5 * h * gl.weights[i];
    }
  }
  parallel_for(n, [&](i64 j) { hv[j] = hankel(k, F, r[j] * r[j], cfg); });
  std::vector<double> out;
  out.reserve(bs.size());
  for (double b : bs) {
    double beta = 4.0 * pi * std::sqrt(b);
    double acc = 0.0;
    for (i64 j = 0; j < n; ++j) acc += w[j] * hv[j] * bessel_j(k - 1, beta * r[j]) * 2.0 * r[j];
    out.push_back(two_pi * acc);
  }
  return out;
}

double hankel_roundtrip(int k, const TestFunction& F, double b, const QuadratureConfig& cfg,
                        double tail_cut) {
  return hankel_roundtrip(k, F, std::vector<double>{b}, cfg, tail_cut).front();
}

std::pair<cplx, cplx> weber_check(int k, cplx alpha, double beta, double gamma,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(alpha.real() > 0.0)) throw std::invalid_argument("weber_check: Re alpha must be positive");
  if (!(beta > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("weber_check: beta, gamma must be positive");
  // y = t^2; e^{-2 pi Re(alpha) T^2} < e^{-46} beyond T.
  double T = std::sqrt(46.0 / (two_pi * alpha.real()));
  double oscillations = 2.0 * (beta + gamma) * T + std::abs(alpha.imag()) * T * T;
  int panels = cfg.panels + static_cast<int>(std::ceil(4.0 * oscillations));
  auto f = [&](double t) {
    double y = t * t;
    return std::exp(-two_pi * alpha * y) * bessel_j(k - 1, 4.0 * pi * beta * t) *
           bessel_j(k - 1, 4.0 * pi * gamma * t) * 2.0 * t;
  };
  cplx lhs = integrate_complex(f, 0.0, T, panels, cfg.points_per_panel);
  cplx z = cplx(0.0, 4.0 * pi * beta * gamma) / alpha;
  cplx rhs = i_pow(1 - k) / (two_pi * alpha) * bessel_j(k - 1, z) *
             std::exp(-two_pi * (beta * beta + gamma * gamma) / alpha);
  return {lhs, rhs};
}

std::pair<cplx, cplx> poisson_check(const std::vector<cplx>& K, const TestFunction& V, double X,
                                    i64 mmax, const QuadratureConfig& cfg) {
  cfg.validate();
  i64 c = static_cast<i64>(K.size());
  if (c < 1) throw std::invalid_argument("poisson_check: empty period");
  if (!(X > 0.0)) throw std::invalid_argument("poisson_check: X must be positive");
  cplx lhs{};
  i64 n0 = static_cast<i64>(std::ceil(X * V.lower())), n1 = static_cast<i64>(std::floor(X * V.upper()));
  for (i64 n = n0; n <= n1; ++n) lhs += K[pos_mod(n, c)] * V(static_cast<double>(n) / X);
  cplx rhs{};
  double lo = V.lower(), hi = V.upper();
  for (i64 m = -mmax; m <= mmax; ++m) {
    cplx khat{};
    for (i64 g = 0; g < c; ++g) khat += K[g] * e_frac(m * g, c);
    double freq = static_cast<double>(m) * X / static_cast<double>(c);
    int panels = cfg.panels + static_cast<int>(std::ceil(2.0 * std::abs(freq) * (hi - lo)));
    cplx vhat = integrate_complex([&](double y) { return V(y) * e(-freq * y); }, lo, hi, panels,
                                  cfg.points_per_panel);
    rhs += khat * vhat;
  }
  rhs *= X / static_cast<double>(c);
  return {lhs, rhs};
}

}  // namespace tracelab
