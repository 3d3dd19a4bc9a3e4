#include "tracelab/suites.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tracelab/arith.hpp"
#include "tracelab/lfun.hpp"
#include "tracelab/specfun.hpp"
#include "tracelab/traceformula.hpp"
#include "tracelab/transforms.hpp"
#include "tracelab/voronoi.hpp"

namespace tracelab {

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return !checks.empty();
}

const Check* SuiteReport::worst() const {
  const Check* w = nullptr;
  double r = -1.0;
  for (const auto& c : checks) {
    double q = c.budget > 0 ? c.residual / c.budget : (c.residual > 0 ? INFINITY : 0.0);
    if (q > r) {
      r = q;
      w = &c;
    }
  }
  return w;
}

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Checks that must come out large: pass when observed >= floor.
Check at_least(std::string name, double observed, double floor) { return {std::move(name), observed, floor, observed}; }

}  // namespace

SuiteReport arith_suite() {
  Timer t;
  SuiteReport r;
  r.name = "arith";
  {
    // As stated, the hypothesis is p | m, p !| n, p^2 | c. The sum also needs
    // the p-part of the conductor of chi to divide c / p: S_{chi_{-4}}(2, 1; 4) = -2i.
    double stated = 0.0, sharp = 0.0;
    i64 cases = 0, sharp_cases = 0, counter = 0;
    std::string first;
    for (i64 D = 1; D <= 24; ++D) {
      for (const auto& chi : build_characters(D)) {
        for (i64 c = D; c <= 400; c += D) {
          for (i64 n = 1; n <= 20; ++n) {
            bool any = false;
            for (i64 m = 1; m <= 20 && !any; ++m) any = vanishing_hypothesis(m, n, c);
            if (!any) continue;
            auto row = kloosterman_row(chi, n, c);
            for (i64 m = 1; m <= 20; ++m) {
              if (!vanishing_hypothesis(m, n, c)) continue;
              ++cases;
              double v = std::abs(row[m % c]) / static_cast<double>(c);
              stated = std::max(stated, v);
              if (v > 1e-9) {
                if (counter++ == 0) first = fmt(" (first: %s, m=%lld n=%lld c=%lld)", chi.describe().c_str(),
                                               static_cast<long long>(m), static_cast<long long>(n),
                                               static_cast<long long>(c));
              }
              if (vanishing_applies(chi, m, n, c)) {
                ++sharp_cases;
                sharp = std::max(sharp, v);
              }
            }
          }
        }
      }
    }
    r.checks.push_back({fmt("vanishing as stated, %lld cases, %lld nonzero", static_cast<long long>(cases),
                            static_cast<long long>(counter)) + first,
                        stated, stated, 1e-9});
    r.checks.push_back({fmt("vanishing with chi's p-conductor dividing c/p, %lld cases", static_cast<long long>(sharp_cases)),
                        sharp, sharp, 1e-9});
  }
  {
    double worst = 0.0;
    for (i64 D : {5, 7, 8, 12}) {
      for (const auto& chi : build_characters(D)) {
        if (!chi.is_primitive()) continue;
        for (i64 c = 1; c <= 30; ++c) {
          if (std::gcd(c, D) != 1) continue;
          for (i64 ell = 1; ell <= 12; ++ell)
            for (i64 n = 1; n <= 12; ++n) {
              auto [a, b] = check_twisted_multiplicativity(chi, ell, n, c);
              worst = std::max(worst, std::abs(a - b));
            }
        }
      }
    }
    r.checks.push_back({"twisted multiplicativity, D in {5,7,8,12}", worst, worst, 1e-8});
  }
  {
    double worst = 0.0;
    for (i64 D = 1; D <= 50; ++D)
      for (const auto& chi : build_characters(D))
        if (chi.is_primitive()) worst = std::max(worst, std::abs(std::abs(gauss_sum(chi)) - 1.0));
    r.checks.push_back({"|eps_chi| = 1, primitive chi, D <= 50", worst, worst, 1e-10});
  }
  {
    double bad = 0.0;
    for (i64 D = 1; D <= 200; ++D) bad += ramanujan_sum(D) != moebius(D);
    r.checks.push_back({"Ramanujan sum equals Moebius, D <= 200", bad, bad, 0.0});
  }
  r.seconds = t.seconds();
  return r;
}

SuiteReport specfun_suite() {
  Timer t;
  SuiteReport r;
  r.name = "specfun";
  {
    double worst = 0.0;
    const cplx samples[] = {{-1.2, 0},  {-0.5, 3},   {0.1, -1},  {0.25, 14}, {0.5, 0},   {0.5, 7.5}, {0.5, -22},
                            {0.7, 0.3}, {0.9, -4},   {1, 1},     {1.3, 30},  {1.7, -9},  {2, 0},     {2.2, 2.5},
                            {2.5, -40}, {3, 11},     {3.3, -0.7}, {4, 6},    {5.5, -17}, {8, 0.1}};
    for (int k = 4; k <= 16; ++k)
      for (cplx s : samples) {
        cplx a = gamma_factor(k, s), b = gamma_factor_duplicated(k, s);
        worst = std::max(worst, std::abs(a - b) / std::abs(a));
      }
    r.checks.push_back({"gamma factor closed forms, 20 s x k = 4..16 (rel)", worst, worst, 1e-10});
  }
  {
    struct Case {
      int k;
      double x, sigma;
    };
    double worst = 0.0, spread = 0.0;
    const Case cases[] = {{12, 0.5, 3.0}, {12, 0.5, 2.0}, {4, 0.1, 2.0}, {6, 0.3, 2.5}, {8, 0.2, 2.5}, {8, 0.2, 4.0}};
    std::vector<double> vals;
    for (auto c : cases) {
      double tmax = mellin_barnes_tmax(c.k, c.x, c.sigma, 1e-9);
      vals.push_back(mellin_barnes_j(c.k, c.x, c.sigma, tmax, static_cast<int>(16 * tmax)).value);
      double ref = bessel_j(c.k - 1, 4.0 * pi * c.x);
      worst = std::max(worst, std::abs(vals.back() - ref) / std::abs(ref));
    }
    // same integral on two contours
    for (auto [a, b] : {std::pair{0, 1}, std::pair{4, 5}}) spread = std::max(spread, std::abs(vals[a] - vals[b]) / std::abs(vals[b]));
    r.checks.push_back({"Mellin-Barnes against J, 6 cases (rel)", worst, worst, 1e-8});
    r.checks.push_back({"Mellin-Barnes contour independence (rel)", spread, spread, 1e-8});
  }
  {
    double worst = 0.0;
    for (int k : {4, 6, 12})
      for (double x = 0.1; x <= 100.0; x *= 1.13) {
        double h = 1e-3 * std::max(1.0, std::sqrt(x));
        double d = (8.0 * (bessel_j(k, x + h) - bessel_j(k, x - h)) - bessel_j(k, x + 2 * h) + bessel_j(k, x - 2 * h)) /
                   (12.0 * h);
        worst = std::max(worst, std::abs(bessel_j(k - 1, x) - bessel_j(k + 1, x) - 2.0 * d));
      }
    r.checks.push_back({"Bessel recurrence J_{k-1} - J_{k+1} = 2 J_k'", worst, worst, 1e-9});
  }
  r.seconds = t.seconds();
  return r;
}

SuiteReport transforms_suite() {
  Timer t;
  SuiteReport r;
  r.name = "transforms";
  QuadratureConfig cfg;
  {
    cfg.target_abs_error = 1e-8;
    auto g = canonical_bump(1.0, 2.0);
    std::vector<double> bs;
    for (int i = 1; i <= 10; ++i) bs.push_back(1.0 + i / 11.0);
    double worst = 0.0;
    for (int k : {4, 6, 12}) {
      auto v = hankel_roundtrip(k, g, bs, cfg, 1e4);
      for (std::size_t i = 0; i < bs.size(); ++i) worst = std::max(worst, std::abs(v[i] - g(bs[i])));
    }
    r.checks.push_back({"Hankel inversion, 10 points x k in {4,6,12}", worst, worst, 1e-6});
    cfg = QuadratureConfig{};
  }
  {
    double worst = 0.0;
    const cplx alphas[] = {{1.0, 0.0}, {2.0, 1.0}, {0.6, -0.5}};
    const double betas[] = {0.1, 0.3, 0.6};
    const double gammas[] = {0.2, 0.4, 0.7};
    const int ks[] = {4, 6, 12};
    int i = 0;
    for (cplx a : alphas)
      for (double b : betas)
        for (double c : gammas) {
          auto [lhs, rhs] = weber_check(ks[i++ % 3], a, b, c, cfg);
          worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    r.checks.push_back({"Weber integral, 27 triples (rel)", worst, worst, 1e-8});
  }
  {
    auto V = canonical_bump(1.0, 2.0);
    double worst = 0.0;
    auto run = [&](const std::vector<cplx>& K, double X, i64 mmax) {
      auto [l, rr] = poisson_check(K, V, X, mmax, cfg);
      worst = std::max(worst, std::abs(l - rr));
    };
    run({cplx(1.0)}, 10.0, 12);
    run({e(0.0), e(1.0 / 3), e(2.0 / 3)}, 10.0, 36);
    run({cplx(1.0)}, 0.4, 250);
    r.checks.push_back({"Poisson summation, 3 cases", worst, worst, 1e-8});
  }
  r.seconds = t.seconds();
  return r;
}

SuiteReport petersson_suite(const std::vector<HarmonicBasis>& bases) {
  Timer t;
  SuiteReport r;
  r.name = "petersson";
  auto grid = [](const HarmonicBasis& b, i64 cmax) {
    double worst = 0.0;
    for (i64 m = 1; m <= 10; ++m)
      for (i64 n = 1; n <= 10; ++n) {
        auto c = verify_petersson(b, b.weight(), b.level(), b.character(), m, n, cmax);
        worst = std::max(worst, c.residual);
      }
    return worst;
  };
  for (const auto& b : bases) {
    i64 cmax = 400;
    while (petersson_tail_bound(b.weight(), b.level(), 10, 10, cmax) > 1e-10) cmax *= 2;
    double w = grid(b, cmax);
    r.checks.push_back({fmt("Petersson grid [1,10]^2, %s, cmax %lld", b[0].label.c_str(), static_cast<long long>(cmax)),
                        w, w, 1e-9});
  }
  if (!bases.empty()) {
    const auto& b = bases.front();
    CuspFormData f = b[0];
    f.coeffs[1] += 0.01;
    HarmonicBasis bad({f});
    double w = grid(bad, 400);
    r.checks.push_back(at_least(fmt("Petersson grid with a(2) + 0.01, %s, detected", f.label.c_str()), w, 1e-3));
  }
  r.seconds = t.seconds();
  return r;
}

SuiteReport voronoi_suite(const HarmonicBasis& tau) {
  Timer t;
  SuiteReport r;
  r.name = "voronoi";
  const BumpFunction g(1.0, 9.0);
  VoronoiOptions opt;
  opt.tol = 1e-7;
  auto pair = [&](int k, i64 D, const DirichletCharacter& chi, i64 ell) {
    auto a = voronoi_geometric_initial(k, D, chi, ell, g, opt);
    auto b = voronoi_geometric_final(k, D, chi, ell, g, opt);
    double res = std::abs(a.value - b.value);
    r.checks.push_back({fmt("initial vs final, k=%d D=%lld %s l=%lld", k, static_cast<long long>(D),
                            chi.describe().c_str(), static_cast<long long>(ell)),
                        std::abs(a.value), res, 1e-5});
  };
  for (auto [k, D] : {std::pair<int, i64>{6, 5}, {8, 5}, {6, 7}}) {
    auto chi = character(D, first_primitive_index(D, k % 2 ? -1 : 1));
    for (i64 ell : {i64{1}, i64{2}, D, 2 * D}) pair(k, D, chi, ell);
  }
  for (auto [k, D] : {std::pair<int, i64>{6, 5}, {4, 6}}) {
    for (i64 ell : {i64{1}, D}) pair(k, D, trivial_character(D), ell);
  }
  VoronoiOptions one = opt;
  one.tol = 1e-8;
  for (i64 ell : {1, 2, 3}) {
    cplx lhs = voronoi_spectral_lhs(tau, ell, g);
    auto a = voronoi_geometric_initial(12, 1, trivial_character(1), ell, g, one);
    auto b = voronoi_geometric_final(12, 1, trivial_character(1), ell, g, one);
    double res = std::max(std::abs(a.value - lhs), std::abs(b.value - lhs));
    r.checks.push_back({fmt("level one against tau, l=%lld", static_cast<long long>(ell)), std::abs(lhs), res, 1e-6});
  }
  r.seconds = t.seconds();
  return r;
}

SuiteReport continuation_suite(const std::vector<CuspFormData>& dim_one, const CuspFormData& tau,
                               const CuspFormData& trivial_form, const CuspFormData& primitive_form) {
  Timer t;
  SuiteReport r;
  r.name = "continuation";
  ContinuationOptions opt;
  opt.tol = 1e-8;
  for (const auto& f : dim_one) {
    HarmonicBasis b({f});
    cplx cont = a_ell_continued(f.weight, f.level, f.character, 1, cplx(2, 0), opt);
    cplx spec = a_ell_spectral(b, 1, cplx(2, 0));
    r.checks.push_back({fmt("A_1(2) continued vs Dirichlet series, %s", f.label.c_str()), std::abs(spec),
                        std::abs(cont - spec), 1e-5});
  }
  const cplx points[] = {{0.5, 0.3}, {0.6, 0.0}, {0.4, 0.1}};
  auto fe = [&](const CuspFormData& f, double tol, double threshold) {
    ContinuationOptions o = opt;
    o.tol = tol;
    for (cplx s : points) {
      auto res = fe_residual(f, s, o);
      r.checks.push_back({fmt("functional equation, %s, s=%g%+gi", f.label.c_str(), s.real(), s.imag()),
                          std::abs(res.lhs), res.residual, threshold});
    }
  };
  fe(tau, 1e-8, 1e-4);
  fe(trivial_form, 1e-8, 1e-3);
  fe(primitive_form, 1e-6, 1e-3);
  double dev = 0.0;
  std::vector<const CuspFormData*> all{&tau, &trivial_form, &primitive_form};
  for (const auto& f : dim_one) all.push_back(&f);
  for (const auto* f : all) dev = std::max(dev, root_number(*f).modulus_deviation());
  r.checks.push_back({"root number modulus, every fixture", 1.0 + dev, dev, 1e-8});
  r.seconds = t.seconds();
  return r;
}

SuiteReport assumption_suite(const std::vector<CuspFormData>& fixtures, const CuspFormData& a,
                             const CuspFormData& b) {
  Timer t;
  SuiteReport r;
  r.name = "assumption";
  for (const auto& f : fixtures) {
    auto rep = validate_assumption(f);
    double bad = static_cast<double>(rep.clause1_violations.size() + rep.clause2_violations.size());
    r.checks.push_back({fmt("assumption clauses, %s (%lld + %lld checks)", f.label.c_str(),
                            static_cast<long long>(rep.clause1_checked), static_cast<long long>(rep.clause2_checked)),
                        bad, bad, 0.0});
  }
  // the direct sum of the two one-dimensional spaces
  std::vector<CuspFormData> forms{with_harmonic_weight(a), with_harmonic_weight(b)};
  const cplx s(2.0, 0.0);
  ContinuationOptions opt;
  opt.tol = 1e-8;
  auto avg = [&](i64 ell) {
    cplx total{};
    for (const auto& f : forms) total += a_ell_continued(f.weight, f.level, f.character, ell, s, opt);
    return total;
  };
  auto iso = isolate_lvalues(forms, avg);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    cplx ref = dirichlet_L(forms[i], s).value;
    r.checks.push_back({fmt("isolated L(2, %s)", forms[i].label.c_str()), std::abs(ref),
                        std::abs(iso.lvalues[i] - ref), 1e-4});
  }
  r.seconds = t.seconds();
  return r;
}

}  // namespace tracelab
