#include "tracelab/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace tracelab {

namespace {

double bessel_series(int nu, double x) {
  double h = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= nu; ++i) term *= h / i;
  double sum = term;
  double h2 = h * h;
  for (int m = 1; m < 500; ++m) {
    term *= -h2 / (static_cast<double>(m) * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel asymptotic expansion, accurate for x >= 25 and small order.
double bessel_asymptotic(int nu, double x) {
  double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = 1e300;
  for (int k = 1; k < 60; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // k odd -> Q, k even -> P, alternating in pairs
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (std::abs(term) < 1e-17) break;
  }
  double w = x - (0.5 * nu + 0.25) * pi;
  return std::sqrt(2.0 / (pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

// Miller backward recurrence normalised by J_0 + 2 sum J_{2k} = 1.
double bessel_miller(int nu, double x) {
  double top = std::max<double>(nu, x);
  int start = 2 * ((static_cast<int>(top + 20.0 + 4.0 * std::sqrt(top)) + 1) / 2);
  double jp1 = 0.0, j = 1e-300, result = 0.0, norm = 0.0;
  for (int m = start; m >= 1; --m) {
    double jm1 = 2.0 * m / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (m - 1 == nu) result = j;
    if ((m - 1) % 2 == 0 && m - 1 > 0) norm += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += j;
  if (nu == 0) result = j;
  return result / norm;
}

}  // namespace

double bessel_j(int nu, double x) {
  if (nu < 0) throw std::invalid_argument("bessel_j: order must be non-negative");
  if (!std::isfinite(x)) throw std::domain_error("bessel_j: non-finite argument");
  if (x < 0) return (nu % 2 ? -1.0 : 1.0) * bessel_j(nu, -x);
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x * x <= 4.0 * (nu + 1)) return bessel_series(nu, x);
  if (x < 25.0 || nu >= x) return bessel_miller(nu, x);
  double j0 = bessel_asymptotic(0, x);
  if (nu == 0) return j0;
  double j1 = bessel_asymptotic(1, x);
  for (int m = 1; m < nu; ++m) {
    double j2 = 2.0 * m / x * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return j1;
}

cplx bessel_j(int nu, cplx z) {
  if (nu < 0) throw std::invalid_argument("bessel_j: order must be non-negative");
  if (std::abs(z) > 60.0) throw std::domain_error("bessel_j: complex argument too large for series");
  cplx h = 0.5 * z;
  cplx term = 1.0;
  for (int i = 1; i <= nu; ++i) term *= h / static_cast<double>(i);
  cplx sum = term;
  cplx h2 = h * h;
  for (int m = 1; m < 1000; ++m) {
    term *= -h2 / (static_cast<double>(m) * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && m > std::abs(h)) break;
  }
  return sum;
}

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-14 &&
      std::abs(z.real() - std::round(z.real())) < 1e-14) {
    throw std::domain_error("log_gamma: pole at " + std::to_string(z.real()));
  }
  cplx shift = 0.0;
  while (z.real() < 0.0 || std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Stirling series with B_2 .. B_20
  static const double b[] = {1.0 / 6,       -1.0 / 30,     1.0 / 42,        -1.0 / 30,
                             5.0 / 66,      -691.0 / 2730, 7.0 / 6,         -3617.0 / 510,
                             43867.0 / 798, -174611.0 / 330};
  cplx res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(two_pi);
  cplx zinv = 1.0 / z, z2 = zinv * zinv, pw = zinv;
  for (int j = 1; j <= 10; ++j) {
    res += b[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * pw;
    pw *= z2;
  }
  return res - shift;
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx gamma_factor(int k, cplx s) {
  double ck = std::pow(2.0, 0.5 * (3.0 - k)) * std::sqrt(pi);
  return ck * std::exp(-s * std::log(two_pi) + log_gamma(s + 0.5 * (k - 1)));
}

cplx gamma_factor_duplicated(int k, cplx s) {
  return std::exp(-s * std::log(pi) + log_gamma(0.5 * (s + 0.5 * (k - 1))) +
                  log_gamma(0.5 * (s + 0.5 * (k + 1))));
}

cplx gamma_ratio(int k, cplx s) {
  return std::exp((2.0 * s - 1.0) * std::log(two_pi) + log_gamma(1.0 - s + 0.5 * (k - 1)) -
                  log_gamma(s + 0.5 * (k - 1)));
}

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.nodes[i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(g)).first->second;
}

namespace {

cplx mb_integrand(int k, double x, double sigma, double tau) {
  cplx s(sigma, tau);
  return gamma_ratio(k, s) * std::exp(2.0 * (s - 1.0) * std::log(x));
}

double mb_tail(int k, double x, double sigma, double tmax) {
  // |integrand| ~ C tau^{1-2 sigma}; both half-lines, 1/(4 pi^2) in front.
  double a = std::abs(mb_integrand(k, x, sigma, tmax));
  return 2.0 * a * tmax / (2.0 * sigma - 2.0) / (4.0 * pi * pi);
}

double mb_quad(int k, double x, double sigma, double tmax, int panels) {
  const auto& gl = gauss_legendre(16);
  double h = tmax / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double mid = (p + 0.5) * h;
    for (int i = 0; i < 16; ++i) {
      double t = mid + 0.5 * h * gl.nodes[i];
      acc += 0.5 * h * gl.weights[i] * mb_integrand(k, x, sigma, t).real();
    }
  }
  // Integrand at -tau is the conjugate, ds = i dtau, and 1/(2 pi) (1/(2 pi i)).
  return 2.0 * acc / (4.0 * pi * pi);
}

}  // namespace

ContourResult mellin_barnes_j(int k, double x, double sigma, double tmax, int npoints) {
  if (k < 2) throw std::invalid_argument("mellin_barnes_j: weight must be >= 2");
  if (!(sigma > 1.0 && sigma < 0.5 * (k + 1))) {
    throw std::invalid_argument("mellin_barnes_j: sigma must lie in (1, (k+1)/2)");
  }
  if (x <= 0.0 || tmax <= 0.0) throw std::invalid_argument("mellin_barnes_j: x and tmax must be positive");
  int panels = std::max(2, npoints / 16);
  ContourResult r;
  r.value = mb_quad(k, x, sigma, tmax, panels);
  r.quadrature_error = std::abs(r.value - mb_quad(k, x, sigma, tmax, panels / 2));
  r.truncation_error = mb_tail(k, x, sigma, tmax);
  return r;
}

double mellin_barnes_tmax(int k, double x, double sigma, double rel_tol) {
  double target = rel_tol * std::abs(bessel_j(k - 1, 4.0 * pi * x));
  double t = 10.0;
  while (mb_tail(k, x, sigma, t) > target && t < 1e7) t *= 1.25;
  return t;
}

}  // namespace tracelab
