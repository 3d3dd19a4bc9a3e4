#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace tracelab {

using cplx = std::complex<double>;
using i64 = std::int64_t;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// e(x) = exp(2 pi i x)
inline cplx e(double x) {
  double s = std::sin(two_pi * x);
  double c = std::cos(two_pi * x);
  return {c, s};
}

// e(a/q) with the numerator reduced first, so large a lose no precision.
inline cplx e_frac(i64 a, i64 q) {
  i64 r = a % q;
  if (r < 0) r += q;
  return e(static_cast<double>(r) / static_cast<double>(q));
}

// i^n for integer n.
inline cplx i_pow(i64 n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline i64 pos_mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Truncated value of an infinite sum plus a bound on what was dropped.
struct TruncationReport {
  cplx value{};
  i64 cmax = 0;
  double tail_bound = 0.0;
  double quadrature_error = 0.0;
};

// Worker threads used by the parallel loops; 0 means hardware_concurrency.
void set_num_threads(unsigned n);
unsigned num_threads();

// Sums f(i) for i in [0, n) in fixed-size chunks, reducing the chunk partials
// in index order. The result does not depend on the thread count.
cplx parallel_sum(i64 n, const std::function<cplx(i64)>& f);
void parallel_for(i64 n, const std::function<void(i64)>& f);

}  // namespace tracelab
