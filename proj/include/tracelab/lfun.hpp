#pragma once

#include <functional>
#include <vector>

#include "tracelab/forms.hpp"
#include "tracelab/transforms.hpp"
#include "tracelab/voronoi.hpp"

namespace tracelab {

// g = b / sum_u b(x / 2^u) with b the canonical bump on [1, 4]; smooth,
// supported in [1, 4], and sum_u g(x / 2^u) = 1 for every x > 0.
class DyadicWindow : public TestFunction {
 public:
  double operator()(double x) const override;
  double lower() const override { return 1.0; }
  double upper() const override { return 4.0; }
  // sum over all integers u of g(x / 2^u)
  double partition(double x) const;
};

struct LValue {
  cplx value{};
  double tail_bound = 0.0;
  i64 N = 0;
};

// sum_{n <= N} a(n) n^{-s}, Re s >= 1.2; N = 0 uses every coefficient.
// The tail bound uses |a(n)| <= d(n).
LValue dirichlet_L(const CuspFormData& f, cplx s, i64 N = 0);
// sum_{n <= N} conj(a(n)) n^{-s}, i.e. conj(L(conj(s))).
LValue dirichlet_L_dual(const CuspFormData& f, cplx s, i64 N = 0);

struct ContinuationOptions {
  double tol = 1e-8;  // per dyadic piece
  i64 cmax = 1 << 16;
  i64 mmax = 0;
  int umax = 40;
};

struct ContinuationReport {
  std::vector<cplx> values;  // one per s
  int umax = 0;              // last u summed
  i64 cmax = 0;              // largest c reached by any piece
  double truncation = 0.0;
  double quadrature = 0.0;
  bool capped = false;
  double budget() const { return truncation + quadrature; }
};

// Geometric expansion of I_s(X; l) = sum^h conj(a_f(l)) sum_n a_f(n) G_s(n / X),
// G_s(y) = y^{-s} g(y), for a batch of s sharing every Bessel evaluation.
ContinuationReport i_s_geometric(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<cplx>& s,
                                 double X, const ContinuationOptions& opt = {});
cplx i_s_geometric(int k, i64 D, const DirichletCharacter& chi, i64 ell, cplx s, double X,
                   const ContinuationOptions& opt = {});

// A_l(s) = sum_{u >= -1} 2^{-us} I_s(2^u; l), Re s > -(k - 4)/2.
ContinuationReport a_ell_continued(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<cplx>& s,
                                   const ContinuationOptions& opt = {});
cplx a_ell_continued(int k, i64 D, const DirichletCharacter& chi, i64 ell, cplx s,
                     const ContinuationOptions& opt = {});

// sum_f omega_f conj(a_f(l)) L(s, f) from fixture coefficients.
cplx a_ell_spectral(const HarmonicBasis& basis, i64 ell, cplx s, i64 N = 0);

using RootCase = VoronoiCase;

struct RootNumber {
  cplx value{};
  RootCase kind = RootCase::level_one;
  double modulus_deviation() const { return std::abs(std::abs(value) - 1.0); }
};

// i^k (level one); i^k chi(-1) eps_chi conj(a(D)) (primitive);
// i^k sqrt(D) mu(D) conj(a(D)) (trivial character, square-free D).
RootNumber root_number(const CuspFormData& f);

struct FEResult {
  cplx lhs{}, rhs{};
  RootNumber root;
  double residual = 0.0;
  double budget = 0.0;
};

// |A_1(s) - root D^{1/2-s} gamma_ratio(k, s) conj(A_1(1 - conj(s)))| with both
// averages continued geometrically in the space of f (dimension one).
FEResult fe_residual(const CuspFormData& f, cplx s, const ContinuationOptions& opt = {});

struct IsolateResult {
  std::vector<i64> ells;
  std::vector<cplx> lvalues;  // L(s, f_i)
  double condition = 0.0;
};

// Solves (G_{l_1}, ..., G_{l_d}) = (omega_i L_i) A with A_ij = conj(a_i(l_j)).
// An empty ells list is filled greedily from l <= 20.
IsolateResult isolate_lvalues(const std::vector<CuspFormData>& forms, const std::function<cplx(i64)>& averaged,
                              std::vector<i64> ells = {});
IsolateResult isolate_lvalues(const HarmonicBasis& basis, cplx s, const ContinuationOptions& opt = {},
                              std::vector<i64> ells = {});

}  // namespace tracelab
