#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "odelp/boxplus.hpp"
#include "odelp/constants.hpp"
#include "odelp/duality.hpp"
#include "odelp/norms.hpp"
#include "odelp/ode.hpp"
#include "odelp/problem_spec.hpp"
#include "odelp/verify.hpp"

namespace py = pybind11;
using namespace odelp;

namespace {

NormOptions make_options(double tol, std::optional<StepFunction> weight, bool backward,
                         std::optional<double> x0) {
  NormOptions opts;
  opts.tol = tol;
  opts.weight = std::move(weight);
  opts.backward = backward;
  opts.x0_override = x0;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_odelp, m) {
  m.doc() = "Varying-exponent Lebesgue norms driven by a first-order ODE";

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("converged", SolveStatus::converged)
      .value("not_in_class", SolveStatus::not_in_class)
      .value("max_refinement", SolveStatus::max_refinement);

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"),
           py::arg("values"))
      .def_static("constant", &StepFunction::constant, py::arg("value"))
      .def("__call__", &StepFunction::operator(), py::arg("t"))
      .def_property_readonly("breakpoints",
                             [](const StepFunction& f) {
                               return std::vector<double>(f.breakpoints().begin(),
                                                          f.breakpoints().end());
                             })
      .def_property_readonly("values",
                             [](const StepFunction& f) {
                               return std::vector<double>(f.values().begin(),
                                                          f.values().end());
                             })
      .def("abs", &StepFunction::abs)
      .def("scaled", &StepFunction::scaled, py::arg("factor"))
      .def("reflected", &StepFunction::reflected)
      .def("is_zero", &StepFunction::is_zero)
      .def("sup_abs", &StepFunction::sup_abs);

  py::class_<ExponentField>(m, "ExponentField")
      .def(py::init<StepFunction>(), py::arg("base"))
      .def_static("constant", &ExponentField::constant, py::arg("p"))
      .def("__call__", &ExponentField::operator(), py::arg("t"))
      .def("ess_inf", &ExponentField::ess_inf)
      .def("ess_sup", &ExponentField::ess_sup)
      .def("conjugate", &ExponentField::conjugate)
      .def_property_readonly("base", &ExponentField::base);

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init<int, std::vector<double>>(), py::arg("n"), py::arg("samples"))
      .def("to_step", &GridFunction::to_step)
      .def_property_readonly("n", &GridFunction::size);

  py::class_<SolutionProfile>(m, "SolutionProfile")
      .def_readonly("ts", &SolutionProfile::ts)
      .def_readonly("phis", &SolutionProfile::phis)
      .def_readonly("x0", &SolutionProfile::x0)
      .def_readonly("status", &SolutionProfile::status)
      .def_readonly("error_bound", &SolutionProfile::error_bound)
      .def("final_value", &SolutionProfile::final_value)
      .def("max_step_increment", &SolutionProfile::max_step_increment);

  py::class_<NormReport>(m, "NormReport")
      .def_readonly("value", &NormReport::value)
      .def_readonly("error_bound", &NormReport::error_bound)
      .def_readonly("status", &NormReport::status)
      .def_readonly("diagnostics", &NormReport::diagnostics)
      .def("__repr__", [](const NormReport& r) {
        return "NormReport(value=" + std::to_string(r.value) +
               ", status=" + to_string(r.status) + ")";
      });

  py::class_<StructureFunction>(m, "StructureFunction")
      .def(py::init([](const std::string& name, StructureFunction::Eval eval) {
             return StructureFunction(name, std::move(eval));
           }),
           py::arg("name"), py::arg("eval"))
      .def("__call__", &StructureFunction::operator(), py::arg("s"), py::arg("x"),
           py::arg("t"))
      .def("validate",
           [](const StructureFunction& u) { u.validate(); })
      .def_static("power_law", &StructureFunction::power_law, py::arg("p"),
                  py::arg("with_exact_hook") = true)
      .def_static("time_weighted_square", &StructureFunction::time_weighted_square)
      .def_static("exponent_band", &StructureFunction::exponent_band, py::arg("p_lo"),
                  py::arg("p_hi"))
      .def_static("excess", &StructureFunction::excess);

  py::class_<CompositePartition>(m, "CompositePartition")
      .def(py::init([](std::vector<double> breakpoints, std::vector<double> inner,
                       std::vector<double> join) {
             CompositePartition part{std::move(breakpoints), std::move(inner),
                                     std::move(join)};
             part.validate();
             return part;
           }),
           py::arg("breakpoints"), py::arg("inner_exponents"), py::arg("join_exponents"))
      .def_static("standard", &CompositePartition::standard, py::arg("p"))
      .def("standard_form", &CompositePartition::standard_form);

  m.def("boxplus", &boxplus, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def(
      "boxplus_chain",
      [](const std::vector<double>& xs, const std::vector<double>& ps) {
        return boxplus_chain(xs, ps);
      },
      py::arg("xs"), py::arg("ps"));
  m.def("dual_exponent", &dual_exponent, py::arg("p"));
  m.def("constant_a", &constant_a);
  m.def("refine_common", &refine_common, py::arg("f"), py::arg("g"));
  m.def("segment_update", &segment_update, py::arg("phi"), py::arg("absf"), py::arg("p"),
        py::arg("dt"));

  m.def("integrate_lp", &integrate_lp, py::arg("f"), py::arg("p"), py::arg("x0"),
        py::arg("weight") = std::nullopt, py::arg("refine") = 1);
  m.def(
      "norm_limit",
      [](const StepFunction& f, const ExponentField& p, double tol,
         std::optional<StepFunction> weight, bool backward, std::optional<double> x0) {
        return norm_limit(f, p, make_options(tol, std::move(weight), backward, x0));
      },
      py::arg("f"), py::arg("p"), py::arg("tol") = 1e-8,
      py::arg("weight") = std::nullopt, py::arg("backward") = false,
      py::arg("x0") = std::nullopt);
  m.def("integrate_upsilon", &integrate_upsilon, py::arg("u"), py::arg("f"),
        py::arg("x0"), py::arg("n"), py::arg("tol") = 1e-8,
        py::arg("max_doublings") = 24);

  m.def(
      "lp_norm",
      [](const StepFunction& f, const ExponentField& p, double tol,
         std::optional<StepFunction> weight, bool backward, std::optional<double> x0) {
        return lp_norm(f, p, make_options(tol, std::move(weight), backward, x0));
      },
      py::arg("f"), py::arg("p"), py::arg("tol") = 1e-8,
      py::arg("weight") = std::nullopt, py::arg("backward") = false,
      py::arg("x0") = std::nullopt);
  m.def("composite_seminorm", &composite_seminorm, py::arg("f"), py::arg("partition"));
  m.def("nakano_norm", &nakano_norm, py::arg("f"), py::arg("p"), py::arg("tol") = 1e-9);
  m.def("modular", &modular, py::arg("f"), py::arg("p"), py::arg("lam"));
  m.def(
      "sequence_norm",
      [](const std::vector<double>& xs, const std::vector<double>& ps) {
        return sequence_norm(xs, ps);
      },
      py::arg("xs"), py::arg("ps"));
  m.def("weight_isometry", &weight_isometry, py::arg("f"), py::arg("w"), py::arg("p"));

  m.def("duality_map", &duality_map, py::arg("f"), py::arg("p"));
  m.def(
      "holder_pair",
      [](const StepFunction& f, const StepFunction& g, const ExponentField& p,
         double tol) {
        const HolderReport rep = holder_pair(f, g, p, tol);
        return py::make_tuple(rep.pairing, rep.bound, rep.holds);
      },
      py::arg("f"), py::arg("g"), py::arg("p"), py::arg("tol") = 1e-8);
  m.def(
      "pairing_equality_check",
      [](const StepFunction& f, const ExponentField& p, double tol) {
        const PairingEquality eq = pairing_equality_check(f, p, tol);
        return py::make_tuple(eq.lhs, eq.rhs, eq.gap);
      },
      py::arg("f"), py::arg("p"), py::arg("tol") = 1e-8);
  m.def("iota_invariant", &iota_invariant, py::arg("f"), py::arg("p"),
        py::arg("grid") = 256);

  m.def(
      "run_suite",
      [](std::uint64_t seed, int trials, double tol, std::vector<std::string> families,
         std::vector<std::string> properties) {
        SuiteConfig config;
        config.seed = seed;
        config.trials = trials;
        config.tol = tol;
        if (!families.empty()) config.families = std::move(families);
        config.properties = std::move(properties);
        const PropertyReport rep = run_suite(config);
        return py::make_tuple(rep.pass, rep.to_json());
      },
      py::arg("seed") = 42, py::arg("trials") = 200, py::arg("tol") = 1e-8,
      py::arg("families") = std::vector<std::string>{},
      py::arg("properties") = std::vector<std::string>{});
  m.def("property_names", &property_names);

  m.def("builtin_one", &builtin_one);
  m.def("builtin_ramp", &builtin_ramp, py::arg("n") = 4096);
  m.def("example_notin_exponent", &example_notin_exponent, py::arg("n") = 1 << 16,
        py::arg("cap") = 1e6);
}
