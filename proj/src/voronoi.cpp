#include "tracelab/voronoi.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "dualsum.hpp"
#include "tracelab/specfun.hpp"
#include "tracelab/traceformula.hpp"

namespace tracelab {

VoronoiCase voronoi_case(int k, i64 D, const DirichletCharacter& chi) {
  require_space(k, D, chi);
  if (D == 1) return VoronoiCase::level_one;
  if (chi.is_primitive()) return VoronoiCase::primitive;
  if (chi.is_trivial()) {
    for (const auto& pe : factorize(D)) {
      if (pe.second > 1) {
        throw std::invalid_argument("trivial character needs square-free level, got D = " + std::to_string(D));
      }
    }
    return VoronoiCase::trivial_squarefree;
  }
  throw std::invalid_argument("character " + chi.describe() + " is neither primitive nor trivial");
}

std::string to_string(VoronoiCase c) {
  switch (c) {
    case VoronoiCase::primitive: return "primitive";
    case VoronoiCase::trivial_squarefree: return "trivial_squarefree";
    case VoronoiCase::level_one: return "level_one";
  }
  return "?";
}

namespace {

using TableKey = std::tuple<int, double, double, i64, int, int, double>;

std::mutex table_mutex;
std::map<TableKey, std::vector<double>>& table_cache() {
  static std::map<TableKey, std::vector<double>> cache;
  return cache;
}

// Sampled quadrature error of the table.
double hankel_table_error(int k, const BumpFunction& g, i64 D, i64 nmax, const QuadratureConfig& cfg) {
  double err = 0.0;
  for (double a : {1.0 / D, 1.0, 10.0, static_cast<double>(nmax) / D}) {
    err = std::max(err, hankel_estimate(k, g, a, cfg).error);
  }
  return err;
}

// The envelope falls faster than geometrically across blocks (0.8N, N], so the
// last block's mass bounds everything after it.
double hankel_tail(const std::vector<double>& h) {
  double s = 0.0;
  for (std::size_t i = (4 * h.size()) / 5; i < h.size(); ++i) s += std::abs(h[i]);
  return s;
}

}  // namespace

std::vector<double> hankel_table(int k, const BumpFunction& g, i64 D, i64 nmax, const QuadratureConfig& cfg) {
  cfg.validate();
  TableKey key{k, g.lower(), g.upper(), D, cfg.panels, cfg.points_per_panel, cfg.oscillatory_split_threshold};
  std::vector<double> have;
  {
    std::lock_guard<std::mutex> lock(table_mutex);
    have = table_cache()[key];
  }
  if (static_cast<i64>(have.size()) < nmax) {
    i64 from = static_cast<i64>(have.size());
    have.resize(nmax);
    parallel_for(nmax - from, [&](i64 i) {
      i64 n = from + 1 + i;
      have[n - 1] = hankel(k, g, static_cast<double>(n) / D, cfg);
    });
    std::lock_guard<std::mutex> lock(table_mutex);
    auto& slot = table_cache()[key];
    if (slot.size() < have.size()) slot = have;
  }
  have.resize(nmax);
  return have;
}

i64 hankel_nmax(int k, const BumpFunction& g, i64 D, double eps, const QuadratureConfig& cfg) {
  i64 n = 16 * D;
  while (true) {
    auto h = hankel_table(k, g, D, n, cfg);
    if (hankel_tail(h) < eps) return n;
    if (n > 50'000'000) throw std::runtime_error("hankel_nmax: Hankel transform does not decay");
    n = (5 * n + 3) / 4;
  }
}

cplx voronoi_spectral_lhs(const HarmonicBasis& basis, i64 ell, const BumpFunction& g) {
  if (ell < 1) throw std::invalid_argument("voronoi_spectral_lhs: ell must be positive");
  cplx total{};
  i64 n0 = static_cast<i64>(std::floor(g.lower())) + 1;
  i64 n1 = static_cast<i64>(std::ceil(g.upper())) - 1;
  for (const auto& f : basis.forms()) {
    if (!f.harmonic_weight) throw std::invalid_argument("form " + f.label + " has no harmonic weight");
    i64 need = std::max(ell, n1);
    if (f.size() < need) {
      throw std::out_of_range("form " + f.label + " needs coefficients up to N = " + std::to_string(need));
    }
    cplx s{};
    for (i64 n = n0; n <= n1; ++n) s += f.a(n) * g(static_cast<double>(n));
    total += *f.harmonic_weight * std::conj(f.a(ell)) * s;
  }
  return total;
}

VoronoiReport voronoi_spectral_rhs(const HarmonicBasis& basis, i64 ell, const BumpFunction& g, i64 nmax,
                                   const QuadratureConfig& cfg) {
  VoronoiReport r;
  if (basis.dimension() == 0) return r;
  const int k = basis.weight();
  const i64 D = basis.level();
  const auto& chi = basis.character();
  VoronoiCase vc = voronoi_case(k, D, chi);
  LevelSplit ls = level_split(ell, D);
  if (nmax <= 0) nmax = hankel_nmax(k, g, D, 1e-10, cfg);
  i64 step = vc == VoronoiCase::level_one ? 1 : ls.ell0 * D;
  for (const auto& f : basis.forms()) {
    if (!f.harmonic_weight) throw std::invalid_argument("form " + f.label + " has no harmonic weight");
    i64 need = std::max(step * nmax, ell);
    if (f.size() < need) {
      throw std::out_of_range("form " + f.label + " needs coefficients up to N = " + std::to_string(need) +
                              " (nmax = " + std::to_string(nmax) + "), fixture has " + std::to_string(f.size()));
    }
  }
  auto H = hankel_table(k, g, D, nmax, cfg);
  cplx pref;
  switch (vc) {
    case VoronoiCase::primitive:
      pref = i_pow(k) * static_cast<double>(chi.parity()) * gauss_sum(chi) / std::sqrt(static_cast<double>(D));
      break;
    case VoronoiCase::trivial_squarefree: pref = static_cast<double>(moebius(D)) * i_pow(k); break;
    case VoronoiCase::level_one: pref = i_pow(k); break;
  }
  double amax = 0.0;
  cplx total{};
  for (const auto& f : basis.forms()) {
    cplx s{};
    for (i64 n = 1; n <= nmax; ++n) {
      cplx an = f.a(step * n);
      amax = std::max(amax, std::abs(an));
      s += std::conj(an) * H[n - 1];
    }
    cplx outer = vc == VoronoiCase::level_one ? std::conj(f.a(ell)) : f.a(ls.ell_prime) * std::conj(chi(ls.ell_prime));
    if (vc == VoronoiCase::level_one) s = std::conj(s);
    total += *f.harmonic_weight * outer * s;
  }
  double wsum = 0.0;
  for (const auto& f : basis.forms()) wsum += *f.harmonic_weight;
  r.value = pref * total;
  r.nmax = nmax;
  r.truncation_error = wsum * std::max(amax, 1.0) * hankel_tail(H);
  r.quadrature_error = wsum * std::max(amax, 1.0) * hankel_table_error(k, g, D, nmax, cfg) * std::sqrt(nmax);
  return r;
}

VoronoiReport voronoi_geometric_initial(int k, i64 D, const DirichletCharacter& chi, i64 ell,
                                        const BumpFunction& g, const VoronoiOptions& opt) {
  require_space(k, D, chi);
  if (ell < 1) throw std::invalid_argument("ell must be positive");
  opt.quad.validate();
  detail::DualSum ds;
  ds.k = k;
  ds.D = D;
  ds.chi = chi;
  ds.ell = ell;
  ds.X = 1.0;
  ds.lo = g.lower();
  ds.hi = g.upper();
  ds.amps = {[&g](double y) { return cplx(g(y)); }};
  ds.spectrum = detail::FourierTail(ds.amps, ds.lo, ds.hi);
  ds.mmax = opt.mmax;
  detail::DualSumTotal t = detail::sum_over_c(ds, opt.tol, opt.cmax);
  VoronoiReport r;
  cplx factor = two_pi * i_pow(-k) * static_cast<double>(chi.parity());
  r.value = g(static_cast<double>(ell)) + factor * t.sums[0];
  r.cmax = t.cmax;
  r.mmax = t.mmax;
  r.truncation_error = two_pi * t.truncation;
  r.quadrature_error = t.quadrature;
  r.capped = t.capped;
  return r;
}

namespace {

struct DualPetersson {
  std::vector<cplx> P;  // 2 pi i^{-k} sum_c S(l0 D n, l'; cD)/(cD) J(...)
  i64 cmax = 0;
  double truncation = 0.0;
  bool capped = false;
};

DualPetersson dual_petersson(int k, i64 D, const DirichletCharacter& chi, i64 ell, const std::vector<double>& H,
                             double tol, i64 cap) {
  LevelSplit ls = level_split(ell, D);
  const i64 N = static_cast<i64>(H.size());
  DualPetersson out;
  out.P.assign(N, cplx{});
  double sh = 0.0;
  for (double h : H) sh += std::abs(h);
  // n is settled once |H(n/D)| |change| < 0.05 tol max(|H(n/D)| / sum |H|, 1/N).
  auto settled = [&](i64 n, double change) {
    double h = std::abs(H[n - 1]);
    return h * change < 0.05 * tol * std::max(h / std::max(sh, 1e-300), 1.0 / static_cast<double>(N));
  };

  std::vector<cplx> chk(N);
  std::vector<char> has_chk(N, 0);
  std::vector<i64> next(N), active;
  std::vector<double> Y(N);
  for (i64 n = 1; n <= N; ++n) {
    Y[n - 1] = 4.0 * pi * std::sqrt(static_cast<double>(ell) * n / static_cast<double>(D));
    next[n - 1] = std::max<i64>(8, static_cast<i64>(std::ceil(2.0 * Y[n - 1] / (k - 1))));
    if (H[n - 1] != 0.0) active.push_back(n);
  }
  std::vector<cplx> T;
  i64 c = 0;
  while (!active.empty()) {
    ++c;
    if (c > cap) {
      out.capped = true;
      for (i64 n : active) {
        out.truncation += has_chk[n - 1] ? std::abs(H[n - 1]) * std::abs(out.P[n - 1] - chk[n - 1])
                                         : std::numeric_limits<double>::infinity();
      }
      c = cap;
      break;
    }
    const i64 q = c * D;
    std::vector<cplx> row = kloosterman_row(chi, ls.ell_prime, q, D);
    T.resize(c);
    for (i64 r = 0; r < c; ++r) T[r] = row[static_cast<i64>((__int128)ls.ell0 * r % c)];
    const double qd = static_cast<double>(q);
    std::vector<i64> keep;
    keep.reserve(active.size());
    for (i64 n : active) {
      cplx& p = out.P[n - 1];
      p += T[n % c] * (bessel_j(k - 1, Y[n - 1] / c) / qd);
      if (next[n - 1] == c) {
        if (has_chk[n - 1] && settled(n, std::abs(p - chk[n - 1]))) {
          out.truncation += std::abs(H[n - 1]) * std::abs(p - chk[n - 1]);
          continue;
        }
        chk[n - 1] = p;
        has_chk[n - 1] = 1;
        next[n - 1] = 2 * c;
      }
      keep.push_back(n);
    }
    active.swap(keep);
  }
  out.cmax = c;
  cplx f = two_pi * i_pow(-k);
  for (auto& p : out.P) p *= f;
  out.truncation *= two_pi;
  return out;
}

struct FinalParts {
  VoronoiCase vc;
  cplx pref;
  std::vector<double> H;
  DualPetersson dp;
  double hankel_tail = 0.0, hankel_err = 0.0;
};

FinalParts final_parts(int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g,
                       const VoronoiOptions& opt) {
  FinalParts fp;
  fp.vc = voronoi_case(k, D, chi);
  if (ell < 1) throw std::invalid_argument("ell must be positive");
  opt.quad.validate();
  i64 nmax = opt.nmax > 0 ? opt.nmax : hankel_nmax(k, g, D, 0.1 * opt.tol, opt.quad);
  fp.H = hankel_table(k, g, D, nmax, opt.quad);
  LevelSplit ls = level_split(ell, D);
  DirichletCharacter twist = fp.vc == VoronoiCase::primitive ? chi : trivial_character(D);
  switch (fp.vc) {
    case VoronoiCase::primitive:
      fp.pref = i_pow(k) * static_cast<double>(chi.parity()) * std::conj(chi(ls.ell_prime)) * gauss_sum(chi) /
                std::sqrt(static_cast<double>(D));
      break;
    case VoronoiCase::trivial_squarefree: fp.pref = static_cast<double>(moebius(D)) * i_pow(k); break;
    case VoronoiCase::level_one: fp.pref = i_pow(k); break;
  }
  fp.dp = dual_petersson(k, D, twist, ell, fp.H, opt.tol, opt.cmax);
  double pmax = 1.0;
  for (const auto& p : fp.dp.P) pmax = std::max(pmax, std::abs(p));
  fp.hankel_tail = hankel_tail(fp.H) * pmax;
  fp.hankel_err = hankel_table_error(k, g, D, nmax, opt.quad) * pmax * std::sqrt(static_cast<double>(nmax));
  return fp;
}

}  // namespace

VoronoiReport voronoi_geometric_final(int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g,
                                      const VoronoiOptions& opt) {
  FinalParts fp = final_parts(k, D, chi, ell, g, opt);
  cplx s{};
  for (std::size_t i = 0; i < fp.H.size(); ++i) s += fp.H[i] * fp.dp.P[i];
  VoronoiReport r;
  r.value = fp.pref * s;
  if (fp.vc == VoronoiCase::level_one) r.value += i_pow(-k) * hankel(k, g, static_cast<double>(ell), opt.quad);
  r.cmax = fp.dp.cmax;
  r.nmax = static_cast<i64>(fp.H.size());
  r.truncation_error = fp.dp.truncation + fp.hankel_tail;
  r.quadrature_error = fp.hankel_err;
  r.capped = fp.dp.capped;
  return r;
}

LevelOneGroupings voronoi_level_one_groupings(int k, i64 ell, const BumpFunction& g, const VoronoiOptions& opt) {
  auto triv = trivial_character(1);
  FinalParts fp = final_parts(k, 1, triv, ell, g, opt);
  if (ell > static_cast<i64>(fp.H.size())) {
    throw std::invalid_argument("ell beyond the Hankel table; raise nmax");
  }
  LevelOneGroupings out;
  cplx s{};
  for (std::size_t i = 0; i < fp.H.size(); ++i) s += fp.H[i] * fp.dp.P[i];
  out.separated = i_pow(-k) * hankel(k, g, static_cast<double>(ell), opt.quad) + i_pow(k) * s;
  cplx t{};
  for (std::size_t i = 0; i < fp.H.size(); ++i) {
    cplx diag = static_cast<i64>(i) + 1 == ell ? 1.0 : 0.0;
    t += fp.H[i] * (diag + fp.dp.P[i]);
  }
  out.absorbed = i_pow(k) * t;
  return out;
}

VoronoiCheck verify_voronoi_geometric(int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g,
                                      const VoronoiOptions& opt) {
  VoronoiCheck c;
  c.lhs = voronoi_geometric_initial(k, D, chi, ell, g, opt);
  c.rhs = voronoi_geometric_final(k, D, chi, ell, g, opt);
  c.residual = std::abs(c.lhs.value - c.rhs.value);
  c.budget = std::max(c.lhs.budget() + c.rhs.budget(), 10.0 * opt.tol);
  return c;
}

VoronoiCheck verify_voronoi_spectral(const HarmonicBasis& basis, i64 ell, const BumpFunction& g,
                                     const VoronoiOptions& opt) {
  VoronoiCheck c;
  c.lhs.value = voronoi_spectral_lhs(basis, ell, g);
  c.rhs = voronoi_spectral_rhs(basis, ell, g, opt.nmax, opt.quad);
  c.residual = std::abs(c.lhs.value - c.rhs.value);
  c.budget = std::max(c.rhs.budget(), 10.0 * opt.tol);
  return c;
}

}  // namespace tracelab
