// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_BENCH_HPP
#define STOKESMG_BENCH_HPP

#include <iosfwd>
#include <map>

#include "stokesmg/problems.hpp"
#include "stokesmg/solvers.hpp"

namespace stokesmg
{

enum class SolverKind
{
  Hmg,
  PhmgDirect,
  PhmgGradual,
  FbfHmg,
  FbfPhmg
};

std::string to_string(SolverKind s);
SolverKind parse_solver(const std::string &s);

struct RunConfig
{
  std::string problem = "ldc2d";
  Family family = Family::TaylorHood;
  int k = 2;
  int refinements = 2;
  SolverKind solver = SolverKind::Hmg;
  CycleParams cycle;
  double rtol = 1e-10;
  int restart = 30;
  int max_iterations = 1000;
  ProblemOptions problem_options;
  bool keep_solution = false;
};

struct RunReport
{
  RunConfig config;
  int dofs = 0;
  double nnz_per_dof = 0.0;
  int iterations = 0;
  bool converged = false;
  double t_setup = 0.0, t_solve = 0.0, t_total = 0.0;
  // Exclusive kernel times per phase.
  std::map<std::string, double> setup_kernels, solve_kernels;
  std::vector<double> residual_history;
  double final_relative_residual = 0.0;
  Vector solution;  // filled when config.keep_solution

  double setup_fraction() const { return t_total > 0.0 ? t_setup / t_total : 0.0; }
  // Fraction of the solve phase covered by the solve kernels.
  double solve_coverage() const;
};

// Builds the problem (not timed), then the preconditioner (setup phase, including coarse
// rediscretization) and runs FGMRES from a zero guess (solve phase).
RunReport run(const RunConfig &config);

struct TableRow
{
  RunReport report;
  // Reference time over this solver's time; 1 for the reference itself.
  double r_total = 1.0, r_setup = 1.0, r_solve = 1.0;
};

struct ComparisonTable
{
  SolverKind reference = SolverKind::Hmg;
  std::vector<TableRow> rows;
};

// Relative metric: reference time divided by solver time.
double relative_metric(double reference_time, double solver_time);

// Pairs every report with the reference-solver report of the same problem, family, k and
// refinement count. Throws if a reference run is missing.
ComparisonTable compare(std::vector<RunReport> reports, SolverKind reference);

struct SweepConfig
{
  std::vector<std::string> problems{"ldc2d"};
  std::vector<Family> families{Family::TaylorHood};
  std::vector<int> ks{2};
  std::vector<int> refinements{2};
  std::vector<SolverKind> solvers;
  std::optional<SolverKind> reference;
  CycleParams cycle;
  double rtol = 1e-10;
  int restart = 30;
  int max_iterations = 1000;
  ProblemOptions problem_options;
};

// key = value lines, comma-separated lists, '#' comments. Keys: problem, family, k,
// refinements, solvers, reference, nv, nup, nuh, rtol, restart, max_iterations,
// base_cells, mesh_dir.
SweepConfig parse_sweep_config(std::istream &in);
SweepConfig load_sweep_config(const std::filesystem::path &path);

// Runs the grid sequentially; progress (if set) is called after each run.
ComparisonTable sweep(const SweepConfig &config,
                      const std::function<void(const RunReport &)> &progress = {});

enum class TableFormat
{
  Csv,
  Markdown
};

TableFormat parse_format(const std::string &s);
// Fixed leading columns, then one column per kernel seen in any row.
std::vector<std::string> csv_columns(const ComparisonTable &t);
void emit(const ComparisonTable &t, TableFormat format, std::ostream &out);
void emit(const ComparisonTable &t, TableFormat format, const std::filesystem::path &path);

}  // namespace stokesmg

#endif  // STOKESMG_BENCH_HPP
