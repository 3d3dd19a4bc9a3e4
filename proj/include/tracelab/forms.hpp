#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/arith.hpp"

namespace tracelab {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CuspFormData {
  std::string label;
  int weight = 0;
  i64 level = 1;
  DirichletCharacter character = trivial_character(1);
  std::vector<cplx> coeffs;  // coeffs[n-1] = a_f(n), analytic normalisation
  std::optional<double> harmonic_weight;
  std::string source;

  i64 size() const { return static_cast<i64>(coeffs.size()); }
  // a_f(n) for 1 <= n <= size(); throws std::out_of_range otherwise.
  cplx a(i64 n) const;
};

// Checks a_f(1) = 1, chi(-1) = (-1)^k, omega > 0; throws FixtureError.
void check_form(const CuspFormData& f);

// Reads one fixture file; arithmetic lambda(n) become a_f(n) = lambda(n) / n^{(k-1)/2}.
CuspFormData load_fixture(const std::string& path);
CuspFormData parse_fixture(const std::string& json_text, const std::string& origin = "<string>");

// Resolves a fixture name against TRACE_LAB_FIXTURE_DIR (or the built-in
// data directory) unless it is already an existing path.
std::string resolve_fixture(const std::string& name);
std::string default_fixture_dir();

struct AssumptionReport {
  i64 clause1_checked = 0;
  i64 clause2_checked = 0;
  std::vector<i64> clause1_violations;                 // ell
  std::vector<std::pair<i64, i64>> clause2_violations;  // (n, m)
  bool passed() const { return clause1_violations.empty() && clause2_violations.empty(); }
};

// (1) conj(a(l)) = a(l) conj(chi(l)) for gcd(l, D) = 1;
// (2) a(nm) = a(n) a(m) for m | D^infinity; relative tolerance 1e-9.
AssumptionReport validate_assumption(const CuspFormData& f);

// omega_f for a one-dimensional space from the (1,1) Petersson identity.
// Throws std::runtime_error when the tail bound exceeds 1e-10.
double harmonic_weight_dim1(int k, i64 D, const DirichletCharacter& chi, i64 cmax);
// Smallest cmax (doubling from D) for which the tail bound is below tol.
i64 harmonic_weight_cmax(int k, i64 D, const DirichletCharacter& chi, double tol = 1e-10);

// Copy of f carrying omega_f; derived for dimension one when absent.
CuspFormData with_harmonic_weight(CuspFormData f);

class HarmonicBasis {
 public:
  HarmonicBasis() = default;
  explicit HarmonicBasis(std::vector<CuspFormData> forms);

  int dimension() const { return static_cast<int>(forms_.size()); }
  const std::vector<CuspFormData>& forms() const { return forms_; }
  const CuspFormData& operator[](int i) const { return forms_.at(i); }
  int weight() const;
  i64 level() const;
  const DirichletCharacter& character() const;

 private:
  std::vector<CuspFormData> forms_;
};

}  // namespace tracelab
