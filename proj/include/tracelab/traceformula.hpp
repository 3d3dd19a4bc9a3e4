#pragma once

#include "tracelab/arith.hpp"
#include "tracelab/forms.hpp"

namespace tracelab {

// Bound for sum_{c > cmax, D | c} (2 pi / c) |S_chi(m, n; c)| |J_{k-1}(4 pi sqrt(mn) / c)|.
double petersson_tail_bound(int k, i64 D, i64 m, i64 n, i64 cmax);

// delta(m=n) + 2 pi i^{-k} sum_{c <= cmax, D | c} S_chi(m, n; c) / c J_{k-1}(4 pi sqrt(mn) / c)
TruncationReport petersson_geometric(int k, i64 D, const DirichletCharacter& chi, i64 m, i64 n,
                                     i64 cmax);

// sum_f omega_f conj(a_f(m)) a_f(n)
cplx petersson_spectral(const HarmonicBasis& basis, i64 m, i64 n);

struct PeterssonCheck {
  double residual = 0.0;
  double budget = 0.0;
  cplx spectral{}, geometric{};
  bool passed() const { return residual <= budget; }
};
PeterssonCheck verify_petersson(const HarmonicBasis& basis, int k, i64 D, const DirichletCharacter& chi,
                                i64 m, i64 n, i64 cmax);

// Parity and weight preconditions shared by the trace-formula entry points.
void require_space(int k, i64 D, const DirichletCharacter& chi, int min_weight = 4);

}  // namespace tracelab
