#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tracelab/arith.hpp"
#include "tracelab/cli.hpp"
#include "tracelab/forms.hpp"
#include "tracelab/lfun.hpp"
#include "tracelab/specfun.hpp"
#include "tracelab/suites.hpp"
#include "tracelab/traceformula.hpp"
#include "tracelab/transforms.hpp"
#include "tracelab/voronoi.hpp"

namespace py = pybind11;
using namespace tracelab;

namespace {

void export_arith(py::module_& m) {
  py::class_<DirichletCharacter>(m, "DirichletCharacter")
      .def_property_readonly("modulus", &DirichletCharacter::modulus)
      .def_property_readonly("index", &DirichletCharacter::index)
      .def_property_readonly("conductor", &DirichletCharacter::conductor)
      .def_property_readonly("parity", &DirichletCharacter::parity)
      .def_property_readonly("is_primitive", &DirichletCharacter::is_primitive)
      .def_property_readonly("is_trivial", &DirichletCharacter::is_trivial)
      .def_property_readonly("is_real", &DirichletCharacter::is_real)
      .def("conj", &DirichletCharacter::conj)
      .def("__call__", &DirichletCharacter::operator())
      .def("__repr__", &DirichletCharacter::describe);

  m.def("build_characters", &build_characters, py::arg("D"));
  m.def("character", &character, py::arg("D"), py::arg("index"));
  m.def("trivial_character", &trivial_character, py::arg("D"));
  m.def("moebius", &moebius);
  m.def("euler_phi", &euler_phi);
  m.def("mod_inverse", &mod_inverse);
  m.def("kloosterman", &kloosterman, py::arg("m"), py::arg("n"), py::arg("c"));
  m.def("twisted_kloosterman", &twisted_kloosterman, py::arg("chi"), py::arg("m"), py::arg("n"), py::arg("c"));
  m.def("gauss_sum", &gauss_sum, py::arg("chi"));
  m.def("ramanujan_sum", &ramanujan_sum, py::arg("D"));
  m.def("check_vanishing", &check_vanishing, py::arg("chi"), py::arg("m"), py::arg("n"), py::arg("c"));
  m.def("check_twisted_multiplicativity", &check_twisted_multiplicativity, py::arg("chi"), py::arg("ell"),
        py::arg("n"), py::arg("c"));
  m.def("level_split", [](i64 ell, i64 D) {
    auto s = level_split(ell, D);
    return py::make_tuple(s.ell0, s.ell_prime);
  });
}

void export_analysis(py::module_& m) {
  m.def("bessel_j", py::overload_cast<int, double>(&bessel_j), py::arg("nu"), py::arg("x"));
  m.def("log_gamma", &log_gamma, py::arg("z"));
  m.def("gamma_factor", &gamma_factor, py::arg("k"), py::arg("s"));
  m.def("gamma_ratio", &gamma_ratio, py::arg("k"), py::arg("s"));

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("panels", &QuadratureConfig::panels)
      .def_readwrite("points_per_panel", &QuadratureConfig::points_per_panel)
      .def_readwrite("oscillatory_split_threshold", &QuadratureConfig::oscillatory_split_threshold)
      .def_readwrite("target_abs_error", &QuadratureConfig::target_abs_error);

  py::class_<BumpFunction>(m, "BumpFunction")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def("__call__", &BumpFunction::operator())
      .def_property_readonly("lower", &BumpFunction::lower)
      .def_property_readonly("upper", &BumpFunction::upper);
  py::class_<DyadicWindow>(m, "DyadicWindow")
      .def(py::init<>())
      .def("__call__", &DyadicWindow::operator())
      .def("partition", &DyadicWindow::partition);

  m.def(
      "hankel", [](int k, const BumpFunction& g, double a, const QuadratureConfig& cfg) { return hankel(k, g, a, cfg); },
      py::arg("k"), py::arg("g"), py::arg("a"), py::arg("cfg") = QuadratureConfig{});
}

void export_forms(py::module_& m) {
  py::register_exception<FixtureError>(m, "FixtureError", PyExc_ValueError);
  py::class_<CuspFormData>(m, "CuspForm")
      .def_readonly("label", &CuspFormData::label)
      .def_readonly("weight", &CuspFormData::weight)
      .def_readonly("level", &CuspFormData::level)
      .def_readonly("character", &CuspFormData::character)
      .def_readonly("harmonic_weight", &CuspFormData::harmonic_weight)
      .def("a", &CuspFormData::a, py::arg("n"))
      .def("__len__", &CuspFormData::size)
      .def("__repr__", [](const CuspFormData& f) { return "<CuspForm " + f.label + ">"; });
  m.def("load_fixture", [](const std::string& name) { return load_fixture(resolve_fixture(name)); }, py::arg("name"));
  m.def("parse_fixture", &parse_fixture, py::arg("text"), py::arg("origin") = "<string>");
  m.def("with_harmonic_weight", &with_harmonic_weight, py::arg("form"));
  m.def("harmonic_weight_dim1", &harmonic_weight_dim1, py::arg("k"), py::arg("D"), py::arg("chi"),
        py::arg("cmax"));
  m.def("validate_assumption", [](const CuspFormData& f) {
    auto r = validate_assumption(f);
    py::dict d;
    d["passed"] = r.passed();
    d["clause1_violations"] = r.clause1_violations;
    d["clause2_violations"] = r.clause2_violations;
    return d;
  });
  py::class_<HarmonicBasis>(m, "HarmonicBasis")
      .def(py::init<std::vector<CuspFormData>>(), py::arg("forms"))
      .def_property_readonly("dimension", &HarmonicBasis::dimension)
      .def_property_readonly("weight", &HarmonicBasis::weight)
      .def_property_readonly("level", &HarmonicBasis::level);
}

void export_identities(py::module_& m) {
  m.def(
      "petersson",
      [](const HarmonicBasis& b, i64 mm, i64 n, i64 cmax) {
        auto c = verify_petersson(b, b.weight(), b.level(), b.character(), mm, n, cmax);
        py::dict d;
        d["spectral"] = c.spectral;
        d["geometric"] = c.geometric;
        d["residual"] = c.residual;
        d["budget"] = c.budget;
        return d;
      },
      py::arg("basis"), py::arg("m"), py::arg("n"), py::arg("cmax") = 2000);
  m.def("petersson_geometric",
        [](int k, i64 D, const DirichletCharacter& chi, i64 mm, i64 n, i64 cmax) {
          auto r = petersson_geometric(k, D, chi, mm, n, cmax);
          return py::make_tuple(r.value, r.tail_bound);
        },
        py::arg("k"), py::arg("D"), py::arg("chi"), py::arg("m"), py::arg("n"), py::arg("cmax"));

  auto opts = [](double tol, i64 cmax) {
    VoronoiOptions o;
    o.tol = tol;
    o.cmax = cmax;
    return o;
  };
  auto report = [](const VoronoiReport& r) {
    py::dict d;
    d["value"] = r.value;
    d["budget"] = r.budget();
    d["cmax"] = r.cmax;
    d["capped"] = r.capped;
    return d;
  };
  m.def(
      "voronoi_initial",
      [=](int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g, double tol, i64 cmax) {
        return report(voronoi_geometric_initial(k, D, chi, ell, g, opts(tol, cmax)));
      },
      py::arg("k"), py::arg("D"), py::arg("chi"), py::arg("ell"), py::arg("g"), py::arg("tol") = 1e-7,
      py::arg("cmax") = 8192);
  m.def(
      "voronoi_final",
      [=](int k, i64 D, const DirichletCharacter& chi, i64 ell, const BumpFunction& g, double tol, i64 cmax) {
        return report(voronoi_geometric_final(k, D, chi, ell, g, opts(tol, cmax)));
      },
      py::arg("k"), py::arg("D"), py::arg("chi"), py::arg("ell"), py::arg("g"), py::arg("tol") = 1e-7,
      py::arg("cmax") = 8192);
  m.def("voronoi_spectral_lhs", &voronoi_spectral_lhs, py::arg("basis"), py::arg("ell"), py::arg("g"));
}

void export_lfun(py::module_& m) {
  auto opts = [](double tol, int umax) {
    ContinuationOptions o;
    o.tol = tol;
    o.umax = umax;
    return o;
  };
  m.def("dirichlet_L", [](const CuspFormData& f, cplx s, i64 N) { return dirichlet_L(f, s, N).value; },
        py::arg("form"), py::arg("s"), py::arg("N") = 0);
  m.def(
      "a_ell_continued",
      [=](int k, i64 D, const DirichletCharacter& chi, i64 ell, cplx s, double tol, int umax) {
        return a_ell_continued(k, D, chi, ell, s, opts(tol, umax));
      },
      py::arg("k"), py::arg("D"), py::arg("chi"), py::arg("ell"), py::arg("s"), py::arg("tol") = 1e-7,
      py::arg("umax") = 40);
  m.def("root_number", [](const CuspFormData& f) { return root_number(f).value; }, py::arg("form"));
  m.def(
      "fe_residual",
      [=](const CuspFormData& f, cplx s, double tol) {
        auto r = fe_residual(f, s, opts(tol, 40));
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["residual"] = r.residual;
        d["budget"] = r.budget;
        return d;
      },
      py::arg("form"), py::arg("s"), py::arg("tol") = 1e-6);
  m.def(
      "isolate_lvalues",
      [](const std::vector<CuspFormData>& forms, const std::function<cplx(i64)>& averaged, std::vector<i64> ells) {
        auto r = isolate_lvalues(forms, averaged, std::move(ells));
        return py::make_tuple(r.lvalues, r.ells, r.condition);
      },
      py::arg("forms"), py::arg("averaged"), py::arg("ells") = std::vector<i64>{});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trace-formula numerics for holomorphic cusp forms";
  export_arith(m);
  export_analysis(m);
  export_forms(m);
  export_identities(m);
  export_lfun(m);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
