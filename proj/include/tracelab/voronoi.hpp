#pragma once

#include <string>
#include <vector>

#include "tracelab/arith.hpp"
#include "tracelab/forms.hpp"
#include "tracelab/transforms.hpp"

namespace tracelab {

enum class VoronoiCase { primitive, trivial_squarefree, level_one };

// Which averaged Voronoi identity applies to (k, D, chi); throws
// std::invalid_argument when none does (or on parity/weight violations).
VoronoiCase voronoi_case(int k, i64 D, const DirichletCharacter& chi);
std::string to_string(VoronoiCase c);

struct VoronoiOptions {
  double tol = 1e-7;  // target for every adaptive truncation
  i64 cmax = 8192;    // hard cap on c
  i64 mmax = 0;       // cap on |m|; 0 keeps the band-limited range
  i64 nmax = 0;       // 0: from the decay of H_k g
  QuadratureConfig quad;
};

struct VoronoiReport {
  cplx value{};
  i64 cmax = 0, mmax = 0, nmax = 0;
  double truncation_error = 0.0;
  double quadrature_error = 0.0;
  bool capped = false;
  double budget() const { return truncation_error + quadrature_error; }
};

// (H_k g)(n / D) for n = 1..nmax; cached per (k, g, D, quadrature).
std::vector<double> hankel_table(int k, const BumpFunction& g, i64 D, i64 nmax, const QuadratureConfig& cfg);
// Smallest N with sum_{n > N} |(H_k g)(n / D)| estimated below eps.
i64 hankel_nmax(int k, const BumpFunction& g, i64 D, double eps, const QuadratureConfig& cfg);

// sum_f omega_f conj(a_f(l)) sum_n a_f(n) g(n)
cplx voronoi_spectral_lhs(const HarmonicBasis& basis, i64 ell, const BumpFunction& g);
// Dual side with (H_k g)(n / D) against conj(a_f(l0 D n)); nmax = 0 picks
// the Hankel cut where the tail is below 1e-10.
VoronoiReport voronoi_spectral_rhs(const HarmonicBasis& basis, i64 ell, const BumpFunction& g, i64 nmax,
                                   const QuadratureConfig& cfg);

// g(l) + 2 pi i^{-k} chi(-1) sum_c sum_{m != 0, (m, cD) = 1} conj(chi(m))/(cD) e(-l mbar/(cD))
//   * int g(y) J_{k-1}(4 pi sqrt(l y)/(cD)) e(-m y/(cD)) dy.
// For D = 1 the m = 0 frequency at c = 1 is kept: it is i^{-k} (H_k g)(l).
VoronoiReport voronoi_geometric_initial(int k, i64 D, const DirichletCharacter& chi, i64 ell,
                                        const BumpFunction& g, const VoronoiOptions& opt = {});
// prefactor * sum_n (H_k g)(n/D) * 2 pi i^{-k} sum_c S_chi(l0 D n, l'; cD)/(cD) J_{k-1}(4 pi sqrt(l n D)/(cD)),
// prefactor i^k chi(-1) conj(chi(l')) eps_chi / sqrt(D) (primitive) or mu(D) i^k
// (trivial, square-free); at level one the zeroth frequency i^{-k} (H_k g)(l) is added.
VoronoiReport voronoi_geometric_final(int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g,
                                      const VoronoiOptions& opt = {});

// Level one: the final form with the zeroth frequency kept separate, and with
// it absorbed as the Petersson diagonal delta(n = l) (k even).
struct LevelOneGroupings {
  cplx separated{}, absorbed{};
};
LevelOneGroupings voronoi_level_one_groupings(int k, i64 ell, const BumpFunction& g, const VoronoiOptions& opt = {});

struct VoronoiCheck {
  VoronoiReport lhs, rhs;
  double residual = 0.0;
  double budget = 0.0;
  bool passed() const { return residual <= budget; }
};

enum class VoronoiMode { geometric, spectral };

VoronoiCheck verify_voronoi_geometric(int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g,
                                      const VoronoiOptions& opt = {});
VoronoiCheck verify_voronoi_spectral(const HarmonicBasis& basis, i64 ell, const BumpFunction& g,
                                     const VoronoiOptions& opt = {});

}  // namespace tracelab
