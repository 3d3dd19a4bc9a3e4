#pragma once

#include <string>
#include <vector>

#include "tracelab/forms.hpp"

namespace tracelab {

struct Check {
  std::string name;
  double value = 0.0;  // headline quantity (usually the larger side)
  double residual = 0.0;
  double budget = 0.0;
  bool passed() const { return residual <= budget; }
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
  const Check* worst() const;  // largest residual / budget
};

// Vanishing of S_chi, twisted multiplicativity, |eps_chi| = 1, Ramanujan sums.
SuiteReport arith_suite();
// Gamma factor closed forms, Mellin-Barnes against J, the Bessel recurrence.
SuiteReport specfun_suite();
// Hankel inversion, Weber's integral, Poisson summation.
SuiteReport transforms_suite();
// Petersson on the (m, n) grid [1, 10]^2 for each basis, plus a perturbed copy
// of the first one that has to fail.
SuiteReport petersson_suite(const std::vector<HarmonicBasis>& bases);
// Initial against final geometric form over the standard (k, D, chi, l) list,
// and level one against the tau fixture.
SuiteReport voronoi_suite(const HarmonicBasis& tau);
// Continuation against the Dirichlet series at s = 2, functional equations,
// root numbers.
SuiteReport continuation_suite(const std::vector<CuspFormData>& dim_one, const CuspFormData& tau,
                               const CuspFormData& trivial_form, const CuspFormData& primitive_form);
// Assumption on every fixture and isolation on a two-form synthetic basis.
SuiteReport assumption_suite(const std::vector<CuspFormData>& fixtures, const CuspFormData& a,
                             const CuspFormData& b);

}  // namespace tracelab
