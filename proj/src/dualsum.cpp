#include "dualsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fft.hpp"
#include "tracelab/specfun.hpp"

namespace tracelab::detail {

i64 fft_size(i64 n) {
  for (i64 m = std::max<i64>(n, 1);; ++m) {
    i64 r = m;
    for (i64 p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

FourierTail::FourierTail(const std::vector<Amplitude>& fs, double lo, double hi) {
  const i64 ns = 4096, L = 16 * ns;
  double dy = (hi - lo) / ns, dxi = 1.0 / (L * dy);
  std::vector<double> mag(L, 0.0);
  std::vector<cplx> in(L), out;
  for (const auto& f : fs) {
    std::fill(in.begin(), in.end(), cplx{});
    for (i64 j = 0; j <= ns; ++j) in[j % L] += f(lo + j * dy) * dy;
    dft(in, out, -1);
    for (i64 r = 0; r < L; ++r) mag[r] = std::max(mag[r], std::abs(out[r]));
  }
  // Fold +-xi together, then accumulate from the top.
  i64 half = L / 2;
  xi_.resize(half + 1);
  tail_.assign(half + 1, 0.0);
  double acc = 0.0;
  for (i64 r = half; r >= 0; --r) {
    xi_[r] = r * dxi;
    tail_[r] = acc;
    acc += (mag[r] + (r > 0 && r < half ? mag[L - r] : 0.0)) * dxi;
  }
}

double FourierTail::cutoff(double eps) const {
  for (std::size_t r = 0; r < tail_.size(); ++r) {
    if (tail_[r] < eps) return xi_[r];
  }
  return xi_.back();
}

double DualSum::max_bessel(i64 c) const {
  double y = 4.0 * pi * std::sqrt(static_cast<double>(ell) * X * hi) / static_cast<double>(c * D);
  double b = std::exp((k - 1) * std::log(0.5 * y) - std::lgamma(static_cast<double>(k)));
  return std::min(1.0, b);
}

i64 DualSum::first_active_c(double xi) const {
  double band = std::sqrt(static_cast<double>(ell) * X / lo);
  double q = (X - band) / xi;
  return std::max<i64>(1, static_cast<i64>(std::ceil(q / static_cast<double>(D))));
}

std::vector<cplx> DualSum::at(i64 c, double eps, i64* m_used) const {
  const i64 q = c * D;
  const double qd = static_cast<double>(q);
  std::vector<cplx> out(amps.size(), cplx{});
  double xt = spectrum.cutoff(eps) + std::sqrt(static_cast<double>(ell) * X / lo) / qd;
  i64 M = static_cast<i64>(std::floor(xt * qd / X));
  if (mmax > 0) M = std::min(M, mmax);
  if (m_used) *m_used = M;
  if (M < 1 && q != 1) return out;

  i64 L = fft_size(std::max<i64>(2 * M + 2, static_cast<i64>(std::ceil(2.2 * xt * qd / X)) + 2));
  double h = qd / (X * static_cast<double>(L));
  i64 j0 = static_cast<i64>(std::ceil(lo / h)), j1 = static_cast<i64>(std::floor(hi / h));
  std::vector<double> jv(std::max<i64>(j1 - j0 + 1, 0));
  for (i64 j = j0; j <= j1; ++j) {
    double y = j * h;
    jv[j - j0] = bessel_j(k - 1, 4.0 * pi * std::sqrt(static_cast<double>(ell) * X * y) / qd) * h;
  }

  std::vector<std::vector<cplx>> spec(amps.size());
  std::vector<cplx> in(L);
  for (std::size_t a = 0; a < amps.size(); ++a) {
    std::fill(in.begin(), in.end(), cplx{});
    for (i64 j = j0; j <= j1; ++j) in[j % L] += amps[a](j * h) * jv[j - j0];
    dft(in, spec[a], -1);
  }

  // Inverses mod q, tabulated when the m-range wraps.
  std::vector<i64> inv;
  bool table = M >= q / 4;
  if (table && q > 1) {
    inv.assign(q, 0);
    for (i64 r = 1; r < q; ++r)
      if (std::gcd(r, q) == 1) inv[r] = mod_inverse(r, q);
  }
  const i64 lq = pos_mod(ell, q);
  for (i64 m = -M; m <= M; ++m) {
    if (m == 0 && q != 1) continue;
    i64 r = pos_mod(m, q);
    if (q > 1 && std::gcd(r, q) != 1) continue;
    i64 mb = q == 1 ? 0 : (table ? inv[r] : mod_inverse(r, q));
    i64 ph = static_cast<i64>((__int128)lq * mb % q);
    cplx w = std::conj(chi(m)) * e_frac(pos_mod(-ph, q), q);
    i64 idx = pos_mod(m, L);
    for (std::size_t a = 0; a < amps.size(); ++a) out[a] += w * spec[a][idx];
  }
  return out;
}

DualSumTotal sum_over_c(const DualSum& ds, double tol, i64 cmax_cap) {
  DualSumTotal t;
  const std::size_t na = ds.amps.size();
  t.sums.assign(na, cplx{});
  // m-truncation budget: 0.01 tol spread over c with weight c^{-1.1} (sum < 10.6).
  auto eps_for = [&](i64 c) {
    double w = two_pi * std::max(ds.max_bessel(c), 1e-300) * 10.6 * std::pow(static_cast<double>(c), 1.1);
    return std::max(0.01 * tol / w, ds.spectrum.floor() * 2.0);
  };
  i64 first = ds.first_active_c(ds.spectrum.cutoff(eps_for(1)));
  double transition = 4.0 * pi * std::sqrt(static_cast<double>(ds.ell) * ds.X * ds.hi) / (ds.k * ds.D);
  i64 cmin = std::max<i64>({8, 2 * first, static_cast<i64>(std::ceil(2 * transition))});
  cmin = std::min(cmin, cmax_cap);

  i64 done = 0, next = cmin;
  std::vector<cplx> prev;
  bool have_prev = false;
  while (true) {
    i64 count = next - done;
    std::vector<std::vector<cplx>> block(count);
    std::vector<i64> ms(count, 0);
    parallel_for(count, [&](i64 i) {
      i64 c = done + 1 + i;
      block[i] = ds.at(c, eps_for(c), &ms[i]);
      double scale = ds.X / static_cast<double>(c * ds.D);
      for (auto& v : block[i]) v *= scale;
    });
    for (i64 i = 0; i < count; ++i) {
      for (std::size_t a = 0; a < na; ++a) t.sums[a] += block[i][a];
      t.mmax = std::max(t.mmax, ms[i]);
      i64 c = done + 1 + i;
      t.quadrature += two_pi * ds.max_bessel(c) * eps_for(c);
    }
    done = next;
    if (have_prev) {
      double diff = 0.0;
      for (std::size_t a = 0; a < na; ++a) diff = std::max(diff, std::abs(t.sums[a] - prev[a]));
      t.truncation = diff;
      if (diff < 0.1 * tol) break;
    }
    prev = t.sums;
    have_prev = true;
    if (done >= cmax_cap) {
      t.capped = true;
      if (!have_prev || done == cmin) t.truncation = std::numeric_limits<double>::infinity();
      break;
    }
    next = std::min(2 * done, cmax_cap);
  }
  t.cmax = done;
  return t;
}

}  // namespace tracelab::detail
