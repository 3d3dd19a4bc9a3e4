#include "tracelab/lfun.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dualsum.hpp"
#include "tracelab/specfun.hpp"
#include "tracelab/traceformula.hpp"

namespace tracelab {

namespace {

const BumpFunction& base_bump() {
  static const BumpFunction b = canonical_bump(1.0, 4.0);
  return b;
}

constexpr double euler_gamma = 0.57721566490153286061;

// sum_{n > N} d(n) n^{-sigma} by partial summation against
// sum_{n <= x} d(n) <= x log x + (2 gamma - 1) x + 4 sqrt(x).
double divisor_tail(double N, double sigma) {
  double a = sigma - 1.0;
  double c1 = 2.0 * euler_gamma - 1.0;
  double p = std::pow(N, -a);
  double t = sigma * p * (std::log(N) / a + 1.0 / (a * a)) + sigma * c1 * p / a +
             4.0 * sigma * std::pow(N, 0.5 - sigma) / (sigma - 0.5);
  return t;
}

LValue dirichlet_series(const CuspFormData& f, cplx s, i64 N, bool dual) {
  if (s.real() < 1.2) {
    throw std::invalid_argument("Dirichlet series needs Re s >= 1.2; use a_ell_continued below that");
  }
  if (N == 0) N = f.size();
  if (N < 1 || N > f.size()) {
    throw std::out_of_range("fixture " + f.label + " has " + std::to_string(f.size()) + " coefficients, asked for " +
                            std::to_string(N));
  }
  LValue r;
  r.N = N;
  cplx acc{};
  for (i64 n = N; n >= 1; --n) {
    cplx a = dual ? std::conj(f.a(n)) : f.a(n);
    acc += a * std::exp(-s * std::log(static_cast<double>(n)));
  }
  r.value = acc;
  r.tail_bound = divisor_tail(static_cast<double>(N), s.real());
  return r;
}

}  // namespace

double DyadicWindow::partition(double x) const {
  if (!(x > 0.0)) return 0.0;
  const auto& b = base_bump();
  int u0 = static_cast<int>(std::floor(std::log2(x)));
  double sum = 0.0;
  for (int u = u0 - 2; u <= u0 + 1; ++u) sum += b(std::ldexp(x, -u));
  return sum;
}

double DyadicWindow::operator()(double x) const {
  if (!(x > 1.0 && x < 4.0)) return 0.0;
  return base_bump()(x) / partition(x);
}

LValue dirichlet_L(const CuspFormData& f, cplx s, i64 N) { return dirichlet_series(f, s, N, false); }
LValue dirichlet_L_dual(const CuspFormData& f, cplx s, i64 N) { return dirichlet_series(f, s, N, true); }

namespace {

struct Piece {
  std::vector<cplx> values;
  detail::DualSumTotal total;
};

detail::DualSum make_dual(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<cplx>& s,
                          const ContinuationOptions& opt) {
  static const DyadicWindow g;
  detail::DualSum ds;
  ds.k = k;
  ds.D = D;
  ds.chi = chi;
  ds.ell = ell;
  ds.lo = g.lower();
  ds.hi = g.upper();
  for (cplx si : s) {
    ds.amps.push_back([si](double y) { return g(y) * std::exp(-si * std::log(y)); });
  }
  ds.spectrum = detail::FourierTail(ds.amps, ds.lo, ds.hi);
  ds.mmax = opt.mmax;
  return ds;
}

Piece piece_at(detail::DualSum& ds, double X, double tol, const ContinuationOptions& opt) {
  ds.X = X;
  Piece p;
  p.total = detail::sum_over_c(ds, tol, opt.cmax);
  cplx factor = two_pi * i_pow(-ds.k) * static_cast<double>(ds.chi.parity());
  double y = static_cast<double>(ds.ell) / X;
  p.values.resize(ds.amps.size());
  for (std::size_t a = 0; a < ds.amps.size(); ++a) p.values[a] = ds.amps[a](y) + factor * p.total.sums[a];
  return p;
}

void check_args(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<cplx>& s) {
  require_space(k, D, chi);
  if (ell < 1) throw std::invalid_argument("ell must be positive");
  if (s.empty()) throw std::invalid_argument("no s values given");
  double floor = -(k - 4) / 2.0;
  for (cplx si : s) {
    if (!(si.real() > floor)) {
      throw std::invalid_argument("continuation needs Re s > " + std::to_string(floor) + " in weight " +
                                  std::to_string(k));
    }
  }
}

}  // namespace

ContinuationReport i_s_geometric(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<cplx>& s,
                                 double X, const ContinuationOptions& opt) {
  check_args(k, D, chi, ell, s);
  if (!(X > 0.0)) throw std::invalid_argument("X must be positive");
  detail::DualSum ds = make_dual(k, D, chi, ell, s, opt);
  Piece p = piece_at(ds, X, opt.tol, opt);
  ContinuationReport r;
  r.values = p.values;
  r.cmax = p.total.cmax;
  r.truncation = two_pi * p.total.truncation;
  r.quadrature = p.total.quadrature;
  r.capped = p.total.capped;
  return r;
}

cplx i_s_geometric(int k, i64 D, const DirichletCharacter& chi, i64 ell, cplx s, double X,
                   const ContinuationOptions& opt) {
  return i_s_geometric(k, D, chi, ell, std::vector<cplx>{s}, X, opt).values[0];
}

ContinuationReport a_ell_continued(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<cplx>& s,
                                   const ContinuationOptions& opt) {
  check_args(k, D, chi, ell, s);
  detail::DualSum ds = make_dual(k, D, chi, ell, s, opt);
  ContinuationReport r;
  r.values.assign(s.size(), cplx{});
  // Past the diagonal the pieces fall off quickly; stop after two small ones.
  int u_quiet = static_cast<int>(std::ceil(std::log2(static_cast<double>(ell)))) + 2;
  int small = 0;
  double last = 0.0;
  int u = -1;
  for (; u <= opt.umax; ++u) {
    std::vector<cplx> ws;
    double wmax = 0.0;
    for (cplx si : s) {
      ws.push_back(std::exp(-si * (u * std::log(2.0))));
      wmax = std::max(wmax, std::abs(ws.back()));
    }
    // each weighted piece to within tol
    Piece p = piece_at(ds, std::ldexp(1.0, u), opt.tol / wmax, opt);
    double biggest = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a) {
      cplx w = ws[a];
      cplx term = w * p.values[a];
      r.values[a] += term;
      biggest = std::max(biggest, std::abs(term));
      double wm = std::abs(w);
      r.truncation += wm * two_pi * p.total.truncation;
      r.quadrature += wm * p.total.quadrature;
    }
    r.cmax = std::max(r.cmax, p.total.cmax);
    r.capped = r.capped || p.total.capped;
    last = biggest;
    small = biggest < opt.tol ? small + 1 : 0;
    if (u >= u_quiet && small >= 2) break;
  }
  if (u > opt.umax) {
    r.capped = true;
    u = opt.umax;
  }
  r.umax = u;
  r.truncation += last;
  return r;
}

cplx a_ell_continued(int k, i64 D, const DirichletCharacter& chi, i64 ell, cplx s, const ContinuationOptions& opt) {
  return a_ell_continued(k, D, chi, ell, std::vector<cplx>{s}, opt).values[0];
}

cplx a_ell_spectral(const HarmonicBasis& basis, i64 ell, cplx s, i64 N) {
  cplx total{};
  for (const auto& f : basis.forms()) {
    if (!f.harmonic_weight) throw std::invalid_argument("fixture " + f.label + " has no harmonic weight");
    total += *f.harmonic_weight * std::conj(f.a(ell)) * dirichlet_L(f, s, N).value;
  }
  return total;
}

RootNumber root_number(const CuspFormData& f) {
  RootNumber r;
  r.kind = voronoi_case(f.weight, f.level, f.character);
  cplx ik = i_pow(f.weight);
  switch (r.kind) {
    case RootCase::level_one:
      r.value = ik;
      break;
    case RootCase::primitive:
      r.value = ik * static_cast<double>(f.character.parity()) * gauss_sum(f.character) * std::conj(f.a(f.level));
      break;
    case RootCase::trivial_squarefree:
      r.value = ik * std::sqrt(static_cast<double>(f.level)) * static_cast<double>(moebius(f.level)) *
                std::conj(f.a(f.level));
      break;
  }
  return r;
}

FEResult fe_residual(const CuspFormData& f, cplx s, const ContinuationOptions& opt) {
  FEResult out;
  out.root = root_number(f);
  cplx sd = 1.0 - std::conj(s);
  ContinuationReport c = a_ell_continued(f.weight, f.level, f.character, 1, {s, sd}, opt);
  cplx factor = out.root.value * std::exp((0.5 - s) * std::log(static_cast<double>(f.level))) * gamma_ratio(f.weight, s);
  out.lhs = c.values[0];
  out.rhs = factor * std::conj(c.values[1]);
  out.residual = std::abs(out.lhs - out.rhs);
  out.budget = c.budget() * (1.0 + std::abs(factor));
  return out;
}

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

Mat coefficient_matrix(const std::vector<CuspFormData>& forms, const std::vector<i64>& ells) {
  Mat A(forms.size(), ells.size());
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = 0; j < ells.size(); ++j) A(i, j) = std::conj(forms[i].a(ells[j]));
  return A;
}

double condition(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  double lo = sv(sv.size() - 1);
  return lo > 0.0 ? sv(0) / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

IsolateResult isolate_lvalues(const std::vector<CuspFormData>& forms, const std::function<cplx(i64)>& averaged,
                              std::vector<i64> ells) {
  const std::size_t d = forms.size();
  if (d < 1 || d > 3) throw std::invalid_argument("isolation supports bases of dimension 1 to 3");
  for (const auto& f : forms) {
    if (!f.harmonic_weight) throw std::invalid_argument("fixture " + f.label + " has no harmonic weight");
  }
  if (ells.empty()) {
    for (i64 l = 1; l <= 20 && ells.size() < d; ++l) {
      auto trial = ells;
      trial.push_back(l);
      if (condition(coefficient_matrix(forms, trial)) < 1e6) ells = trial;
    }
    if (ells.size() < d) throw std::runtime_error("no well-conditioned choice of l <= 20");
  }
  if (ells.size() != d) throw std::invalid_argument("need exactly one l per form");
  Mat A = coefficient_matrix(forms, ells);
  IsolateResult r;
  r.ells = ells;
  r.condition = condition(A);
  Eigen::Matrix<cplx, Eigen::Dynamic, 1> G(d);
  for (std::size_t j = 0; j < d; ++j) G(j) = averaged(ells[j]);
  // v A = G, v_i = omega_i L_i
  Eigen::Matrix<cplx, Eigen::Dynamic, 1> v = A.transpose().fullPivLu().solve(G);
  for (std::size_t i = 0; i < d; ++i) r.lvalues.push_back(v(i) / *forms[i].harmonic_weight);
  return r;
}

IsolateResult isolate_lvalues(const HarmonicBasis& basis, cplx s, const ContinuationOptions& opt,
                              std::vector<i64> ells) {
  auto avg = [&](i64 l) {
    return a_ell_continued(basis.weight(), basis.level(), basis.character(), l, s, opt);
  };
  return isolate_lvalues(basis.forms(), avg, std::move(ells));
}

}  // namespace tracelab
