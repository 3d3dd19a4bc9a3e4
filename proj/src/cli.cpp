#include "tracelab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "tracelab/forms.hpp"
#include "tracelab/lfun.hpp"
#include "tracelab/suites.hpp"
#include "tracelab/traceformula.hpp"
#include "tracelab/voronoi.hpp"

namespace tracelab {

using json = nlohmann::ordered_json;

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  static const std::regex num(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex imag(R"(([+-]?)((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?[ij])");
  static const std::regex both(R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])");
  std::smatch m;
  if (std::regex_match(s, m, num)) return {std::stod(s), 0.0};
  if (std::regex_match(s, m, imag)) {
    double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -v : v};
  }
  if (std::regex_match(s, m, both)) {
    double v = m[3].matched ? std::stod(m[3].str()) : 1.0;
    return {std::stod(m[1].str()), m[2].str() == "-" ? -v : v};
  }
  throw std::invalid_argument("cannot read complex number '" + text + "' (expected a+bi)");
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

struct Row {
  std::string name;
  json value;
  double residual = 0.0, budget = 0.0;
  bool pass() const { return residual <= budget; }
};

struct Output {
  explicit Output(std::string c) : command(std::move(c)) {}
  std::string command;
  json extra = json::object();
  std::vector<Row> rows;
  bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass(); });
  }
};

struct RunConfig {
  int k = 0;
  i64 D = 0;
  int char_index = 0;
  std::vector<i64> ells;
  std::vector<std::string> s_text;
  i64 cmax = 0, mmax = 0, nmax = 0;
  int umax = 40;
  double tol = 0.0;
  std::vector<std::string> fixtures;
  std::string format = "json";
  unsigned threads = 0;
  bool have_k = false, have_D = false;
};

std::string value_text(const json& v) {
  if (v.is_array() && v.size() == 2 && v[0].is_number_float() && v[1].is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(12) << v[0].get<double>() << (v[1].get<double>() < 0 ? " - " : " + ")
       << std::abs(v[1].get<double>()) << "i";
    return os.str();
  }
  if (v.is_number()) {
    std::ostringstream os;
    os << std::setprecision(12) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

void emit(const Output& o, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "table") {
    out << o.command << "\n";
    for (const auto& [key, v] : o.extra.items()) out << "  " << key << ": " << value_text(v) << "\n";
    for (const auto& r : o.rows) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e  %.1e", r.residual, r.budget);
      out << "  " << (r.pass() ? "pass " : "FAIL ") << buf << "  " << r.name << "  [" << value_text(r.value)
          << "]\n";
    }
    out << (o.passed() ? "PASS" : "FAIL") << "\n";
    return;
  }
  json j;
  j["command"] = o.command;
  for (const auto& [key, v] : o.extra.items()) j[key] = v;
  if (o.rows.size() == 1) {
    j["value"] = o.rows[0].value;
    j["residual"] = o.rows[0].residual;
    j["budget"] = o.rows[0].budget;
  }
  json checks = json::array();
  for (const auto& r : o.rows) {
    checks.push_back({{"name", r.name}, {"value", r.value}, {"residual", r.residual}, {"budget", r.budget},
                      {"pass", r.pass()}});
  }
  j["checks"] = checks;
  j["pass"] = o.passed();
  out << j.dump(2) << "\n";
}

Output from_suite(const std::string& command, const SuiteReport& r) {
  Output o{command};
  for (const auto& c : r.checks) o.rows.push_back({c.name, c.value, c.residual, c.budget});
  return o;
}

CuspFormData load(const std::string& name) {
  std::string path;
  try {
    path = resolve_fixture(name);
  } catch (const FixtureError& e) {
    throw UsageError(e.what());
  }
  return load_fixture(path);
}

std::vector<CuspFormData> load_all(const RunConfig& cfg, bool weights) {
  if (cfg.fixtures.empty()) throw UsageError("this command needs at least one --fixture");
  std::vector<CuspFormData> out;
  for (const auto& f : cfg.fixtures) out.push_back(weights ? with_harmonic_weight(load(f)) : load(f));
  return out;
}

DirichletCharacter space_character(const RunConfig& cfg, int k) {
  if (!cfg.have_D) throw UsageError("missing -D/--level");
  auto chi = character(cfg.D, cfg.char_index);
  int want = k % 2 ? -1 : 1;
  if (chi.parity() != want) {
    std::string hint;
    int p = first_primitive_index(cfg.D, want);
    if (p >= 0) {
      hint = " (primitive choice: --char-index " + std::to_string(p) + ")";
    } else if (want == 1) {
      hint = " (trivial character: --char-index 0)";
    }
    throw UsageError(chi.describe() + " has the wrong parity for weight " + std::to_string(k) + hint);
  }
  return chi;
}

int weight(const RunConfig& cfg) {
  if (!cfg.have_k) throw UsageError("missing -k/--weight");
  return cfg.k;
}

std::vector<cplx> s_values(const RunConfig& cfg, cplx fallback) {
  if (cfg.s_text.empty()) return {fallback};
  std::vector<cplx> out;
  for (const auto& t : cfg.s_text) out.push_back(parse_complex(t));
  return out;
}

std::string space_name(int k, i64 D, const DirichletCharacter& chi) {
  return "k=" + std::to_string(k) + " D=" + std::to_string(D) + " " + chi.describe();
}

Output cmd_petersson(const RunConfig& cfg) {
  auto forms = load_all(cfg, true);
  HarmonicBasis b(forms);
  int k = b.weight();
  i64 D = b.level();
  const auto& chi = b.character();
  i64 cmax = cfg.cmax;
  if (cmax == 0) {
    cmax = 400;
    while (petersson_tail_bound(k, D, 10, 10, cmax) > 1e-10) cmax *= 2;
  }
  Output o{"petersson"};
  o.extra["space"] = space_name(k, D, chi);
  o.extra["cmax"] = cmax;
  std::vector<i64> ms = cfg.ells;
  if (ms.empty())
    for (i64 m = 1; m <= 10; ++m) ms.push_back(m);
  for (i64 m : ms)
    for (i64 n = 1; n <= 10; ++n) {
      auto c = verify_petersson(b, k, D, chi, m, n, cmax);
      double budget = cfg.tol > 0 ? std::max(cfg.tol, c.budget) : c.budget;
      o.rows.push_back({"(" + std::to_string(m) + "," + std::to_string(n) + ")", pair(c.spectral), c.residual, budget});
    }
  return o;
}

VoronoiOptions voronoi_options(const RunConfig& cfg) {
  VoronoiOptions o;
  o.tol = cfg.tol > 0 ? cfg.tol : 1e-6;
  if (cfg.cmax) o.cmax = cfg.cmax;
  o.mmax = cfg.mmax;
  o.nmax = cfg.nmax;
  return o;
}

const BumpFunction& voronoi_window() {
  static const BumpFunction g(1.0, 9.0);
  return g;
}

Output cmd_voronoi_geometric(const RunConfig& cfg) {
  int k = weight(cfg);
  auto chi = space_character(cfg, k);
  auto opt = voronoi_options(cfg);
  Output o{"voronoi-geometric"};
  o.extra["space"] = space_name(k, cfg.D, chi);
  o.extra["case"] = to_string(voronoi_case(k, cfg.D, chi));
  std::vector<i64> ells = cfg.ells.empty() ? std::vector<i64>{1} : cfg.ells;
  for (i64 ell : ells) {
    auto c = verify_voronoi_geometric(k, cfg.D, chi, ell, voronoi_window(), opt);
    o.rows.push_back({"initial vs final, l=" + std::to_string(ell), pair(c.lhs.value), c.residual, c.budget});
  }
  return o;
}

Output cmd_voronoi_spectral(const RunConfig& cfg) {
  HarmonicBasis b(load_all(cfg, true));
  auto opt = voronoi_options(cfg);
  Output o{"voronoi-spectral"};
  o.extra["space"] = space_name(b.weight(), b.level(), b.character());
  std::vector<i64> ells = cfg.ells.empty() ? std::vector<i64>{1} : cfg.ells;
  for (i64 ell : ells) {
    VoronoiOptions e = opt;
    if (e.nmax == 0) {
      i64 size = b[0].size();
      for (const auto& f : b.forms()) size = std::min(size, f.size());
      e.nmax = std::min(hankel_nmax(b.weight(), voronoi_window(), b.level(), 1e-10, e.quad),
                        size / (level_split(ell, b.level()).ell0 * b.level()));
    }
    auto c = verify_voronoi_spectral(b, ell, voronoi_window(), e);
    o.rows.push_back({"spectral sides, l=" + std::to_string(ell) + ", N=" + std::to_string(e.nmax), pair(c.lhs.value),
                      c.residual, c.budget});
  }
  return o;
}

ContinuationOptions continuation_options(const RunConfig& cfg) {
  ContinuationOptions o;
  o.tol = cfg.tol > 0 ? cfg.tol : 1e-6;
  if (cfg.cmax) o.cmax = cfg.cmax;
  o.mmax = cfg.mmax;
  o.umax = cfg.umax;
  return o;
}

Output cmd_continue(const RunConfig& cfg) {
  auto opt = continuation_options(cfg);
  std::vector<CuspFormData> forms;
  int k;
  i64 D;
  std::optional<DirichletCharacter> chi;
  if (!cfg.fixtures.empty()) {
    forms = load_all(cfg, true);
    HarmonicBasis b(forms);
    k = b.weight();
    D = b.level();
    chi = b.character();
  } else {
    k = weight(cfg);
    D = cfg.D;
    chi = space_character(cfg, k);
  }
  auto s = s_values(cfg, cplx(2.0, 0.0));
  std::vector<i64> ells = cfg.ells.empty() ? std::vector<i64>{1} : cfg.ells;
  Output o{"continue-l"};
  o.extra["space"] = space_name(k, D, *chi);
  for (i64 ell : ells) {
    auto rep = a_ell_continued(k, D, *chi, ell, s, opt);
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::ostringstream name;
      name << "A_" << ell << "(" << s[i].real() << (s[i].imag() < 0 ? "" : "+") << s[i].imag() << "i), u<=" << rep.umax;
      double budget = std::max(rep.budget(), 10.0 * opt.tol);
      double residual = rep.capped ? INFINITY : 0.0;
      if (!forms.empty() && s[i].real() >= 1.2) {
        cplx spec = a_ell_spectral(HarmonicBasis(forms), ell, s[i]);
        residual = std::abs(spec - rep.values[i]);
        budget = std::max(budget, 1e-5);
        name << " vs Dirichlet series";
      }
      o.rows.push_back({name.str(), pair(rep.values[i]), residual, budget});
    }
  }
  return o;
}

Output cmd_fe(const RunConfig& cfg) {
  auto forms = load_all(cfg, false);
  auto opt = continuation_options(cfg);
  auto s = s_values(cfg, cplx(0.5, 0.3));
  Output o{"fe-check"};
  for (const auto& f : forms) {
    for (cplx si : s) {
      auto r = fe_residual(f, si, opt);
      std::ostringstream name;
      name << f.label << " s=" << si.real() << (si.imag() < 0 ? "" : "+") << si.imag() << "i";
      o.extra["root_number"] = pair(r.root.value);
      o.extra["case"] = to_string(r.root.kind);
      o.rows.push_back({name.str(), pair(r.lhs), r.residual, std::max(r.budget, 10.0 * opt.tol)});
    }
  }
  return o;
}

struct SpaceKey {
  int k;
  i64 D;
  int idx;
  auto operator<=>(const SpaceKey&) const = default;
};

Output cmd_isolate(const RunConfig& cfg) {
  auto forms = load_all(cfg, true);
  auto opt = continuation_options(cfg);
  cplx s = s_values(cfg, cplx(2.0, 0.0)).front();
  // forms from several spaces act as their direct sum
  std::map<SpaceKey, DirichletCharacter> spaces;
  for (const auto& f : forms) spaces.emplace(SpaceKey{f.weight, f.level, f.character.index()}, f.character);
  auto avg = [&](i64 ell) {
    cplx t{};
    for (const auto& [key, chi] : spaces) t += a_ell_continued(key.k, key.D, chi, ell, s, opt);
    return t;
  };
  auto r = isolate_lvalues(forms, avg, cfg.ells);
  Output o{"isolate"};
  json ells = json::array();
  for (i64 l : r.ells) ells.push_back(l);
  o.extra["ells"] = ells;
  o.extra["condition"] = r.condition;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::string name = "L(s, " + forms[i].label + ")";
    double residual = r.condition < 1e6 ? 0.0 : r.condition;
    double budget = 1e6;
    if (s.real() >= 1.2) {
      residual = std::abs(r.lvalues[i] - dirichlet_L(forms[i], s).value);
      budget = 1e-4;
      name += " vs Dirichlet series";
    }
    o.rows.push_back({name, pair(r.lvalues[i]), residual, budget});
  }
  return o;
}

Output cmd_fixtures(const RunConfig& cfg) {
  std::vector<std::string> names = cfg.fixtures;
  if (names.empty()) {
    for (const auto& e : std::filesystem::directory_iterator(default_fixture_dir()))
      if (e.path().extension() == ".json") names.push_back(e.path().string());
    std::sort(names.begin(), names.end());
  }
  Output o{"fixtures-validate"};
  for (const auto& n : names) {
    auto f = load(n);
    auto rep = validate_assumption(f);
    double bad = static_cast<double>(rep.clause1_violations.size() + rep.clause2_violations.size());
    o.rows.push_back({f.label + " assumption clauses", static_cast<double>(rep.clause1_checked + rep.clause2_checked),
                      bad, 0.0});
    auto root = root_number(f);
    o.rows.push_back({f.label + " root number modulus", pair(root.value), root.modulus_deviation(), 1e-8});
  }
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of the Petersson, Voronoi and functional-equation identities for holomorphic cusp forms"};
  app.name("tracelab");
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "target accuracy for adaptive truncations")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  };
  auto add_space = [&](CLI::App* sub) {
    sub->add_option("-k,--weight", cfg.k, "weight k")->check(CLI::PositiveNumber)->each([&](const std::string&) {
      cfg.have_k = true;
    });
    sub->add_option("-D,--level", cfg.D, "level D")->check(CLI::PositiveNumber)->each([&](const std::string&) {
      cfg.have_D = true;
    });
    sub->add_option("--char-index", cfg.char_index, "index of chi in the enumeration of characters mod D");
  };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--cmax", cfg.cmax, "cap on the modulus c")->check(CLI::PositiveNumber);
    sub->add_option("--mmax", cfg.mmax, "cap on the dual frequency |m|")->check(CLI::PositiveNumber);
    sub->add_option("--nmax", cfg.nmax, "length of the dual sum over n")->check(CLI::PositiveNumber);
  };
  auto add_fixture = [&](CLI::App* sub) {
    sub->add_option("--fixture", cfg.fixtures, "fixture file or name (repeatable)");
  };
  auto add_ell = [&](CLI::App* sub) { sub->add_option("--ell", cfg.ells, "l (repeatable)")->check(CLI::PositiveNumber); };
  auto add_s = [&](CLI::App* sub) { sub->add_option("--s", cfg.s_text, "complex s as a+bi (repeatable)"); };

  std::map<std::string, std::function<Output()>> commands;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Output()> fn) {
    auto* s = app.add_subcommand(name, help);
    add_common(s);
    commands[name] = std::move(fn);
    return s;
  };

  sub("arith-check",
      "Kloosterman sum vanishing, twisted multiplicativity of Kloosterman sums, unit Gauss sums and "
      "Ramanujan sums against the Moebius function",
      [] { return from_suite("arith-check", arith_suite()); });
  sub("specfun-check",
      "Closed forms of the gamma factor, the Mellin-Barnes integral for J_{k-1}, and the Bessel recurrence",
      [] { return from_suite("specfun-check", specfun_suite()); });
  sub("transforms-check", "Hankel inversion, Weber's integral and Poisson summation",
      [] { return from_suite("transforms-check", transforms_suite()); });
  auto* pet = sub("petersson",
                  "Petersson trace formula: spectral side over the fixture basis against the Kloosterman-Bessel "
                  "side on the grid (m, n) in [1, 10]^2 (or m from --ell)",
                  [&] { return cmd_petersson(cfg); });
  add_fixture(pet);
  add_ell(pet);
  pet->add_option("--cmax", cfg.cmax, "cap on c")->check(CLI::PositiveNumber);
  auto* vg = sub("voronoi-geometric",
                 "Data-free averaged Voronoi formula: Poisson-dual form of the Petersson-weighted sum against "
                 "its final form with twisted Kloosterman sums and the Hankel transform",
                 [&] { return cmd_voronoi_geometric(cfg); });
  add_space(vg);
  add_ell(vg);
  add_caps(vg);
  auto* vs = sub("voronoi-spectral",
                 "Averaged Voronoi formula on fixture data: sum_n a(n) g(n) against the dual sum with the Hankel "
                 "transform and the root-number prefactor",
                 [&] { return cmd_voronoi_spectral(cfg); });
  add_fixture(vs);
  add_ell(vs);
  add_caps(vs);
  auto* cl = sub("continue-l",
                 "Analytic continuation of the averaged L-function A_l(s) through the dyadic trace-formula "
                 "expansion; compared with the Dirichlet series when fixtures are given and Re s >= 1.2",
                 [&] { return cmd_continue(cfg); });
  add_space(cl);
  add_fixture(cl);
  add_ell(cl);
  add_s(cl);
  add_caps(cl);
  cl->add_option("--umax", cfg.umax, "cap on the dyadic index u")->check(CLI::PositiveNumber);
  auto* fe = sub("fe-check",
                 "Functional equation L(s) = root D^{1/2-s} gamma_k(1-s)/gamma_k(s) conj(L(1-conj s)) with both "
                 "sides continued geometrically",
                 [&] { return cmd_fe(cfg); });
  add_fixture(fe);
  add_s(fe);
  add_caps(fe);
  fe->add_option("--umax", cfg.umax, "cap on the dyadic index u")->check(CLI::PositiveNumber);
  auto* iso = sub("isolate",
                  "Isolation of individual L-values from averaged ones by inverting (conj a_i(l_j))",
                  [&] { return cmd_isolate(cfg); });
  add_fixture(iso);
  add_ell(iso);
  add_s(iso);
  add_caps(iso);
  iso->add_option("--umax", cfg.umax, "cap on the dyadic index u")->check(CLI::PositiveNumber);
  auto* fx = sub("fixtures-validate",
                 "Coefficient assumptions (conjugation symmetry and multiplicativity at D-smooth m) and root "
                 "number modulus for each fixture (all shipped fixtures by default)",
                 [&] { return cmd_fixtures(cfg); });
  add_fixture(fx);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  set_num_threads(cfg.threads);
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Output o = commands.at(name)();
    emit(o, cfg, out);
    return o.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace tracelab
