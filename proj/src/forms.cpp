#include "tracelab/forms.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "tracelab/traceformula.hpp"

#ifndef TRACELAB_DEFAULT_FIXTURE_DIR
#define TRACELAB_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

namespace tracelab {

using nlohmann::json;

cplx CuspFormData::a(i64 n) const {
  if (n < 1 || n > size()) {
    throw std::out_of_range(label + ": coefficient a(" + std::to_string(n) + ") requested, fixture has N = " +
                            std::to_string(size()));
  }
  return coeffs[n - 1];
}

void check_form(const CuspFormData& f) {
  const std::string where = "fixture " + f.label + ": ";
  if (f.weight < 2) throw FixtureError(where + "weight must be >= 2");
  if (f.level < 1) throw FixtureError(where + "level must be positive");
  if (f.character.modulus() != f.level) {
    throw FixtureError(where + "character modulus " + std::to_string(f.character.modulus()) +
                       " differs from level " + std::to_string(f.level));
  }
  int want = f.weight % 2 == 0 ? 1 : -1;
  if (f.character.parity() != want) {
    throw FixtureError(where + "parity mismatch: chi(-1) = " + std::to_string(f.character.parity()) +
                       " but (-1)^k = " + std::to_string(want));
  }
  if (f.coeffs.empty()) throw FixtureError(where + "no coefficients");
  if (std::abs(f.coeffs[0] - 1.0) > 1e-12) {
    std::ostringstream os;
    os << where << "normalization error: a(1) = " << f.coeffs[0] << ", expected 1";
    throw FixtureError(os.str());
  }
  if (f.harmonic_weight && !(*f.harmonic_weight > 0.0)) {
    throw FixtureError(where + "harmonic_weight must be positive");
  }
}

namespace {

double number_of(const json& v, const std::string& where) {
  if (!v.is_number()) throw FixtureError(where + ": expected a number");
  return v.get<double>();
}

cplx coefficient_of(const json& v, const std::string& where) {
  if (v.is_number()) return number_of(v, where);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    if (v[0].is_number_integer() && v[1].is_number_integer()) {
      double den = v[1].get<double>();
      if (den <= 0) throw FixtureError(where + ": rational denominator must be positive");
      return v[0].get<double>() / den;
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw FixtureError(where + ": expected int, [num,den] or [re,im]");
}

DirichletCharacter character_of(const json& c, const std::string& where) {
  if (!c.is_object()) throw FixtureError(where + ": character must be an object");
  std::set<std::string> keys;
  for (auto it = c.begin(); it != c.end(); ++it) keys.insert(it.key());
  if (keys == std::set<std::string>{"modulus", "index"}) {
    if (!c["modulus"].is_number_integer() || !c["index"].is_number_integer()) {
      throw FixtureError(where + ": character modulus/index must be integers");
    }
    i64 q = c["modulus"].get<i64>();
    int idx = c["index"].get<int>();
    if (q < 1) throw FixtureError(where + ": character modulus must be positive");
    try {
      return character(q, idx);
    } catch (const std::out_of_range& e) {
      throw FixtureError(where + ": " + e.what());
    }
  }
  if (keys == std::set<std::string>{"values"}) {
    const json& vals = c["values"];
    if (!vals.is_array() || vals.empty()) throw FixtureError(where + ": character values must be a non-empty array");
    i64 q = static_cast<i64>(vals.size());
    std::vector<cplx> v;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const json& x = vals[i];
      if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number()) {
        throw FixtureError(where + ": character values must be [re,im] pairs");
      }
      v.emplace_back(x[0].get<double>(), x[1].get<double>());
    }
    for (const auto& cand : build_characters(q)) {
      bool same = true;
      for (i64 x = 0; x < q && same; ++x) same = std::abs(cand(x) - v[x]) < 1e-9;
      if (same) return cand;
    }
    throw FixtureError(where + ": character values do not form a Dirichlet character mod " + std::to_string(q));
  }
  throw FixtureError(where + ": character needs exactly {modulus, index} or {values}");
}

}  // namespace

CuspFormData parse_fixture(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FixtureError(origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw FixtureError(origin + ": top level must be an object");
  static const std::set<std::string> allowed = {"label", "weight", "level", "character",
                                                "an",    "harmonic_weight", "source"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!allowed.count(it.key())) throw FixtureError(origin + ": unknown key \"" + it.key() + "\"");
  }
  for (const char* key : {"label", "weight", "level", "character", "an", "source"}) {
    if (!doc.contains(key)) throw FixtureError(origin + ": missing key \"" + std::string(key) + "\"");
  }
  if (!doc["label"].is_string()) throw FixtureError(origin + ": label must be a string");
  if (!doc["source"].is_string()) throw FixtureError(origin + ": source must be a string");
  if (!doc["weight"].is_number_integer()) throw FixtureError(origin + ": weight must be an integer");
  if (!doc["level"].is_number_integer()) throw FixtureError(origin + ": level must be an integer");
  if (!doc["an"].is_array()) throw FixtureError(origin + ": an must be an array");

  CuspFormData f;
  f.label = doc["label"].get<std::string>();
  f.source = doc["source"].get<std::string>();
  f.weight = doc["weight"].get<int>();
  f.level = doc["level"].get<i64>();
  f.character = character_of(doc["character"], origin);
  if (doc.contains("harmonic_weight")) {
    f.harmonic_weight = number_of(doc["harmonic_weight"], origin + ": harmonic_weight");
  }
  const json& an = doc["an"];
  f.coeffs.reserve(an.size());
  double half = 0.5 * (f.weight - 1);
  for (std::size_t i = 0; i < an.size(); ++i) {
    cplx lam = coefficient_of(an[i], origin + ": an[" + std::to_string(i) + "]");
    f.coeffs.push_back(lam / std::pow(static_cast<double>(i + 1), half));
  }
  check_form(f);
  return f;
}

CuspFormData load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path);
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("TRACE_LAB_FIXTURE_DIR")) {
    if (*env) return env;
  }
  return TRACELAB_DEFAULT_FIXTURE_DIR;
}

std::string resolve_fixture(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  fs::path p = fs::path(default_fixture_dir()) / name;
  if (fs::exists(p)) return p.string();
  fs::path q = p;
  q += ".json";
  if (fs::exists(q)) return q.string();
  throw FixtureError("fixture not found: " + name + " (searched " + default_fixture_dir() + ")");
}

AssumptionReport validate_assumption(const CuspFormData& f) {
  AssumptionReport r;
  i64 N = f.size(), D = f.level;
  for (i64 l = 1; l <= N; ++l) {
    if (std::gcd(l, D) != 1) continue;
    ++r.clause1_checked;
    cplx a = f.a(l);
    if (std::abs(std::conj(a) - a * std::conj(f.character(l))) > 1e-9 * std::abs(a)) {
      r.clause1_violations.push_back(l);
    }
  }
  // m ranges over D-smooth integers m > 1.
  for (i64 m = 2; m <= N; ++m) {
    if (level_split(m, D).ell_prime != 1) continue;
    cplx am = f.a(m);
    for (i64 n = 1; n * m <= N; ++n) {
      ++r.clause2_checked;
      cplx lhs = f.a(n * m), rhs = f.a(n) * am;
      double scale = std::max(std::abs(lhs), std::abs(rhs));
      if (std::abs(lhs - rhs) > 1e-9 * scale + 1e-300) r.clause2_violations.emplace_back(n, m);
    }
  }
  return r;
}

double harmonic_weight_dim1(int k, i64 D, const DirichletCharacter& chi, i64 cmax) {
  require_space(k, D, chi);
  TruncationReport t = petersson_geometric(k, D, chi, 1, 1, cmax);
  if (std::abs(t.value.imag()) >= 1e-10) {
    std::ostringstream os;
    os << "harmonic_weight_dim1: imaginary part " << t.value.imag() << " is not negligible";
    throw std::runtime_error(os.str());
  }
  if (t.tail_bound >= 1e-10) {
    std::ostringstream os;
    os << "harmonic_weight_dim1: tail bound " << t.tail_bound << " at cmax = " << cmax
       << " exceeds 1e-10; try cmax >= " << harmonic_weight_cmax(k, D, chi);
    throw std::runtime_error(os.str());
  }
  double w = t.value.real();
  if (!(w > 0.0)) throw std::runtime_error("harmonic_weight_dim1: non-positive weight");
  return w;
}

i64 harmonic_weight_cmax(int k, i64 D, const DirichletCharacter& chi, double tol) {
  require_space(k, D, chi);
  i64 c = std::max<i64>(D, 8);
  while (petersson_tail_bound(k, D, 1, 1, c) >= tol) {
    c *= 2;
    if (c > (i64{1} << 26)) throw std::runtime_error("harmonic_weight_cmax: no feasible cmax");
  }
  // Refine downwards to the nearest multiple of D/8 steps.
  i64 lo = c / 2, hi = c;
  while (hi - lo > std::max<i64>(D, hi / 64)) {
    i64 mid = (lo + hi) / 2;
    if (petersson_tail_bound(k, D, 1, 1, mid) < tol) hi = mid; else lo = mid;
  }
  return hi;
}

CuspFormData with_harmonic_weight(CuspFormData f) {
  if (f.harmonic_weight) return f;
  static std::map<std::tuple<int, i64, int>, double> cache;
  static std::mutex m;
  auto key = std::make_tuple(f.weight, f.level, f.character.index());
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) {
      f.harmonic_weight = it->second;
      return f;
    }
  }
  i64 cmax = harmonic_weight_cmax(f.weight, f.level, f.character);
  double w = harmonic_weight_dim1(f.weight, f.level, f.character, cmax);
  std::lock_guard<std::mutex> lock(m);
  cache[key] = w;
  f.harmonic_weight = w;
  return f;
}

HarmonicBasis::HarmonicBasis(std::vector<CuspFormData> forms) : forms_(std::move(forms)) {
  for (const auto& f : forms_) {
    check_form(f);
    const auto& g = forms_.front();
    if (f.weight != g.weight || f.level != g.level || f.character.index() != g.character.index()) {
      throw std::invalid_argument("HarmonicBasis: forms " + g.label + " and " + f.label +
                                  " do not share weight, level and character");
    }
  }
}

int HarmonicBasis::weight() const {
  if (forms_.empty()) throw std::logic_error("HarmonicBasis: empty basis has no weight");
  return forms_.front().weight;
}

i64 HarmonicBasis::level() const {
  if (forms_.empty()) throw std::logic_error("HarmonicBasis: empty basis has no level");
  return forms_.front().level;
}

const DirichletCharacter& HarmonicBasis::character() const {
  if (forms_.empty()) throw std::logic_error("HarmonicBasis: empty basis has no character");
  return forms_.front().character;
}

}  // namespace tracelab
