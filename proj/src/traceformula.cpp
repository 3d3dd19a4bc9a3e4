#include "tracelab/traceformula.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tracelab/specfun.hpp"

namespace tracelab {

void require_space(int k, i64 D, const DirichletCharacter& chi, int min_weight) {
  if (k < min_weight) {
    throw std::invalid_argument("weight k = " + std::to_string(k) + " is below the minimum " +
                                std::to_string(min_weight));
  }
  if (D < 1 || chi.modulus() != D) {
    throw std::invalid_argument("character modulus " + std::to_string(chi.modulus()) + " does not match level " +
                                std::to_string(D));
  }
  int want = k % 2 == 0 ? 1 : -1;
  if (chi.parity() != want) {
    throw std::invalid_argument("parity mismatch: chi(-1) = " + std::to_string(chi.parity()) + " but (-1)^k = " +
                                std::to_string(want));
  }
}

double petersson_tail_bound(int k, i64 D, i64 m, i64 n, i64 cmax) {
  double A = 4.0 * pi * std::sqrt(static_cast<double>(m) * static_cast<double>(n));
  double lg = std::lgamma(static_cast<double>(k));
  auto jbound = [&](double y) {
    double v = std::exp((k - 1) * std::log(0.5 * y) - lg);
    return std::min(1.0, v);
  };
  i64 c2 = std::max<i64>({4 * cmax, static_cast<i64>(A) + 16, 64});
  auto spf = smallest_prime_factors(c2);
  double tail = 0.0;
  i64 start = (cmax / D + 1) * D;
  i64 g_mn = std::gcd(m, n);
  for (i64 c = start; c <= c2; c += D) {
    int d = 1;
    i64 phi = c, rest = c;
    while (rest > 1) {
      i64 p = spf[rest];
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      d *= e + 1;
      phi = phi / p * (p - 1);
    }
    double g = static_cast<double>(std::gcd(g_mn, c));
    double weil = d * std::sqrt(g * static_cast<double>(c) * static_cast<double>(D));
    tail += two_pi / c * std::min(static_cast<double>(phi), weil) * jbound(A / c);
  }
  // c > c2: d(c) <= c^eps (Nicolas-Robin), |J| <= (A/2c)^{k-1}/(k-1)!.
  double eps = 1.5379 * std::log(2.0) / std::log(std::log(static_cast<double>(c2)));
  double p = k - 0.5 - eps;
  double front = two_pi * std::sqrt(static_cast<double>(g_mn) * static_cast<double>(D)) *
                 std::exp((k - 1) * std::log(0.5 * A) - lg);
  tail += front * std::pow(static_cast<double>(c2), 1.0 - p) / (p - 1.0);
  return tail;
}

TruncationReport petersson_geometric(int k, i64 D, const DirichletCharacter& chi, i64 m, i64 n, i64 cmax) {
  require_space(k, D, chi);
  if (m < 1 || n < 1) throw std::invalid_argument("petersson_geometric: m, n must be positive");
  if (cmax < D) throw std::invalid_argument("petersson_geometric: cmax must be >= D");
  i64 count = cmax / D;
  double A = 4.0 * pi * std::sqrt(static_cast<double>(m) * static_cast<double>(n));
  std::vector<double> plain;
  if (chi.is_trivial()) plain = kloosterman_range(m, n, cmax, D);
  std::vector<double> mags(count, 0.0);
  cplx sum = parallel_sum(count, [&](i64 j) {
    i64 c = D * (j + 1);
    cplx s = chi.is_trivial() ? cplx(plain[c]) : twisted_kloosterman(chi, m, n, c);
    cplx t = s / static_cast<double>(c) * bessel_j(k - 1, A / c);
    mags[j] = std::abs(t);
    return t;
  });
  TruncationReport r;
  r.value = (m == n ? 1.0 : 0.0) + two_pi * i_pow(-k) * sum;
  r.cmax = cmax;
  r.tail_bound = petersson_tail_bound(k, D, m, n, cmax);
  double total = 0.0;
  for (double v : mags) total += v;
  // Rounding in the c-sum plus the per-term Bessel accuracy.
  r.quadrature_error = two_pi * total * (count * std::numeric_limits<double>::epsilon() + 1e-12);
  return r;
}

cplx petersson_spectral(const HarmonicBasis& basis, i64 m, i64 n) {
  cplx s{};
  for (const auto& f : basis.forms()) {
    if (!f.harmonic_weight) throw std::invalid_argument("petersson_spectral: form " + f.label + " has no harmonic weight");
    s += *f.harmonic_weight * std::conj(f.a(m)) * f.a(n);
  }
  return s;
}

PeterssonCheck verify_petersson(const HarmonicBasis& basis, int k, i64 D, const DirichletCharacter& chi, i64 m,
                                i64 n, i64 cmax) {
  PeterssonCheck c;
  c.spectral = petersson_spectral(basis, m, n);
  TruncationReport g = petersson_geometric(k, D, chi, m, n, cmax);
  c.geometric = g.value;
  c.residual = std::abs(c.spectral - c.geometric);
  c.budget = g.tail_bound + g.quadrature_error + 1e-10;
  return c;
}

}  // namespace tracelab
