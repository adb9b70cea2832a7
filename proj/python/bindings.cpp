// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "stokesmg/bench.hpp"

namespace py = pybind11;
using namespace stokesmg;

namespace
{

py::dict problem_info(const std::string &name, int refinements, int k, Family family,
                      const ProblemOptions &options)
{
  const auto p = make_problem(name, refinements, k, family, options);
  const auto sys = assemble_stokes(p);
  py::dict d;
  d["cells"] = p.fine_mesh->num_cells();
  d["dofs"] = sys.size();
  d["velocity_dofs"] = sys.velocity_dofs();
  d["pressure_dofs"] = sys.pressure_dofs();
  d["nnz_per_dof"] = sys.nnz_per_dof();
  d["enclosed_flow"] = sys.enclosed_flow;
  d["has_exact_solution"] = p.exact.has_value();
  return d;
}

// Divergence and (when an exact solution exists) L2 errors of a kept solution.
py::dict solution_diagnostics(const RunReport &report)
{
  const auto &c = report.config;
  if (report.solution.size() == 0)
  {
    throw Error("solution_diagnostics: run with keep_solution=True");
  }
  const auto p = make_problem(c.problem, c.refinements, c.k, c.family, c.problem_options);
  const auto sys = assemble_stokes(p);
  const Vector u = report.solution.head(sys.velocity_dofs());
  const Vector q = report.solution.tail(sys.pressure_dofs());
  py::dict d;
  d["max_divergence"] = compute_max_divergence(u, *sys.velocity);
  d["divergence_l2"] = compute_divergence_norm(u, *sys.velocity);
  if (p.exact)
  {
    const auto e = compute_errors(u, q, *sys.velocity, *sys.pressure, *p.exact, true);
    d["velocity_l2_error"] = e.velocity_l2;
    d["pressure_l2_error"] = e.pressure_l2;
  }
  return d;
}

std::string emit_string(const ComparisonTable &t, TableFormat format)
{
  std::ostringstream out;
  emit(t, format, out);
  return out.str();
}

SweepConfig sweep_config_from_string(const std::string &text)
{
  std::istringstream in(text);
  return parse_sweep_config(in);
}

}  // namespace

PYBIND11_MODULE(_stokesmg, m)
{
  m.doc() = "Monolithic multigrid preconditioners for 2D Stokes saddle systems.";

  py::register_exception<Error>(m, "StokesError", PyExc_ValueError);

  py::enum_<Family>(m, "Family")
      .value("TaylorHood", Family::TaylorHood)
      .value("ScottVogelius", Family::ScottVogelius);
  py::enum_<SolverKind>(m, "SolverKind")
      .value("Hmg", SolverKind::Hmg)
      .value("PhmgDirect", SolverKind::PhmgDirect)
      .value("PhmgGradual", SolverKind::PhmgGradual)
      .value("FbfHmg", SolverKind::FbfHmg)
      .value("FbfPhmg", SolverKind::FbfPhmg);
  py::enum_<CoarseningMode>(m, "CoarseningMode")
      .value("Direct", CoarseningMode::Direct)
      .value("Gradual", CoarseningMode::Gradual);
  py::enum_<TableFormat>(m, "TableFormat")
      .value("Csv", TableFormat::Csv)
      .value("Markdown", TableFormat::Markdown);

  m.def("parse_family", &parse_family);
  m.def("parse_solver", &parse_solver);
  m.def("solver_name", py::overload_cast<SolverKind>(&to_string));
  m.def("family_name", py::overload_cast<Family>(&to_string));
  m.def("p_coarsening_schedule", &p_coarsening_schedule, py::arg("k"), py::arg("mode"));

  py::class_<CycleParams>(m, "CycleParams")
      .def(py::init<>())
      .def_readwrite("n_v", &CycleParams::n_v)
      .def_readwrite("nu_p", &CycleParams::nu_p)
      .def_readwrite("nu_h", &CycleParams::nu_h);

  py::class_<ProblemOptions>(m, "ProblemOptions")
      .def(py::init<>())
      .def_readwrite("base_cells", &ProblemOptions::base_cells)
      .def_readwrite("mesh_dir", &ProblemOptions::mesh_dir);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("problem", &RunConfig::problem)
      .def_readwrite("family", &RunConfig::family)
      .def_readwrite("k", &RunConfig::k)
      .def_readwrite("refinements", &RunConfig::refinements)
      .def_readwrite("solver", &RunConfig::solver)
      .def_readwrite("cycle", &RunConfig::cycle)
      .def_readwrite("rtol", &RunConfig::rtol)
      .def_readwrite("restart", &RunConfig::restart)
      .def_readwrite("max_iterations", &RunConfig::max_iterations)
      .def_readwrite("problem_options", &RunConfig::problem_options)
      .def_readwrite("keep_solution", &RunConfig::keep_solution);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("config", &RunReport::config)
      .def_readonly("dofs", &RunReport::dofs)
      .def_readonly("nnz_per_dof", &RunReport::nnz_per_dof)
      .def_readonly("iterations", &RunReport::iterations)
      .def_readonly("converged", &RunReport::converged)
      .def_readonly("t_setup", &RunReport::t_setup)
      .def_readonly("t_solve", &RunReport::t_solve)
      .def_readonly("t_total", &RunReport::t_total)
      .def_readonly("setup_kernels", &RunReport::setup_kernels)
      .def_readonly("solve_kernels", &RunReport::solve_kernels)
      .def_readonly("residual_history", &RunReport::residual_history)
      .def_readonly("final_relative_residual", &RunReport::final_relative_residual)
      .def_readonly("solution", &RunReport::solution)
      .def("setup_fraction", &RunReport::setup_fraction)
      .def("solve_coverage", &RunReport::solve_coverage);

  py::class_<TableRow>(m, "TableRow")
      .def_readonly("report", &TableRow::report)
      .def_readonly("r_total", &TableRow::r_total)
      .def_readonly("r_setup", &TableRow::r_setup)
      .def_readonly("r_solve", &TableRow::r_solve);

  py::class_<ComparisonTable>(m, "ComparisonTable")
      .def_readonly("reference", &ComparisonTable::reference)
      .def_readonly("rows", &ComparisonTable::rows)
      .def("csv_columns", [](const ComparisonTable &t) { return csv_columns(t); })
      .def("emit", &emit_string, py::arg("format") = TableFormat::Csv);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("problems", &SweepConfig::problems)
      .def_readwrite("families", &SweepConfig::families)
      .def_readwrite("ks", &SweepConfig::ks)
      .def_readwrite("refinements", &SweepConfig::refinements)
      .def_readwrite("solvers", &SweepConfig::solvers)
      .def_readwrite("reference", &SweepConfig::reference)
      .def_readwrite("cycle", &SweepConfig::cycle)
      .def_readwrite("rtol", &SweepConfig::rtol)
      .def_readwrite("restart", &SweepConfig::restart)
      .def_readwrite("max_iterations", &SweepConfig::max_iterations)
      .def_readwrite("problem_options", &SweepConfig::problem_options);

  m.def("problem_info", &problem_info, py::arg("name"), py::arg("refinements"), py::arg("k"),
        py::arg("family") = Family::TaylorHood, py::arg("options") = ProblemOptions{});
  m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("solution_diagnostics", &solution_diagnostics, py::arg("report"));
  m.def("relative_metric", &relative_metric);
  m.def("compare", &compare, py::arg("reports"), py::arg("reference"));
  m.def("parse_sweep_config", &sweep_config_from_string, py::arg("text"));
  m.def("sweep", &sweep, py::arg("config"), py::arg("progress") = nullptr);
}
