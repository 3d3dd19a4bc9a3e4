#pragma once

#include <functional>
#include <vector>

#include "tracelab/arith.hpp"

namespace tracelab::detail {

using Amplitude = std::function<cplx(double)>;

// Tail mass of |f^| beyond a frequency, f supported in [lo, hi] and sampled
// once; f^(xi) = int f(y) e(-xi y) dy.
class FourierTail {
 public:
  FourierTail() = default;
  FourierTail(const std::vector<Amplitude>& fs, double lo, double hi);
  // Smallest xi with int_{|t| > xi} |f^(t)| dt < eps (the largest sampled
  // frequency when eps is below the rounding floor).
  double cutoff(double eps) const;
  double floor() const { return tail_.empty() ? 0.0 : tail_.back(); }

 private:
  std::vector<double> xi_, tail_;
};

// The dual side of Poisson summation in n (mod q = cD) for
//   sum_n amp(n / X) J_{k-1}(4 pi sqrt(ell n) / q) e(n x / q),
// as it appears after opening the Kloosterman sum in the Petersson formula.
struct DualSum {
  int k = 4;
  i64 D = 1;
  DirichletCharacter chi = trivial_character(1);
  i64 ell = 1;
  double X = 1.0;
  double lo = 1.0, hi = 2.0;
  std::vector<Amplitude> amps;
  FourierTail spectrum;
  i64 mmax = 0;  // 0: no cap beyond the band limit

  // sum over m (m != 0 unless q = 1, (m, q) = 1) of
  //   conj(chi(m)) e(-ell mbar / q) int amp(y) J_{k-1}(4 pi sqrt(ell X y)/q) e(-m X y / q) dy
  // truncated where the spectrum tail is below eps.
  std::vector<cplx> at(i64 c, double eps, i64* m_used = nullptr) const;
  i64 first_active_c(double xi) const;
  double max_bessel(i64 c) const;
};

struct DualSumTotal {
  std::vector<cplx> sums;  // sum_c (X / q) at(c)
  i64 cmax = 0;
  i64 mmax = 0;
  double truncation = 0.0;
  double quadrature = 0.0;
  bool capped = false;
};

// Accumulates c = 1, 2, ... in doubling blocks until a block changes every
// sum by less than 0.1 tol, or until cmax_cap.
DualSumTotal sum_over_c(const DualSum& ds, double tol, i64 cmax_cap);

// Smallest n >= min_n of the form 2^a 3^b 5^c 7^d.
i64 fft_size(i64 min_n);

}  // namespace tracelab::detail
