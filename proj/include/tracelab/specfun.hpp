#pragma once

#include "tracelab/common.hpp"

namespace tracelab {

// J_nu(x) for integer order nu >= 0 and real x.
double bessel_j(int nu, double x);
// J_nu(z) for complex z by the ascending series; intended for |z| <~ 40.
cplx bessel_j(int nu, cplx z);

cplx log_gamma(cplx z);
cplx gamma(cplx z);

// gamma_k(s) = c_k (2 pi)^{-s} Gamma(s + (k-1)/2), c_k = 2^{(3-k)/2} sqrt(pi).
cplx gamma_factor(int k, cplx s);
// Same factor written as pi^{-s} Gamma((s+(k-1)/2)/2) Gamma((s+(k+1)/2)/2).
cplx gamma_factor_duplicated(int k, cplx s);
// gamma_k(1-s) / gamma_k(s)
cplx gamma_ratio(int k, cplx s);

struct ContourResult {
  double value = 0.0;
  double truncation_error = 0.0;
  double quadrature_error = 0.0;
};

// J_{k-1}(4 pi x) from the Mellin-Barnes integral of gamma_ratio along
// Re s = sigma, truncated to |Im s| <= tmax and sampled with npoints nodes.
ContourResult mellin_barnes_j(int k, double x, double sigma, double tmax, int npoints);

// Smallest tmax whose tail estimate is below rel_tol * |J_{k-1}(4 pi x)|.
double mellin_barnes_tmax(int k, double x, double sigma, double rel_tol);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace tracelab
