// SPDX-License-Identifier: Apache-2.0
//
// Benchmark driver: single runs and sweeps over solver configurations.

#include <iostream>

#include <CLI11.hpp>

#include "stokesmg/bench.hpp"

using namespace stokesmg;

namespace
{

void print_summary(const RunReport &r, std::ostream &out)
{
  out << r.config.problem << ' ' << to_string(r.config.family) << " k=" << r.config.k
      << " refinements=" << r.config.refinements << ' ' << to_string(r.config.solver)
      << ": dofs=" << r.dofs << " iterations=" << r.iterations
      << (r.converged ? "" : " (not converged)") << " setup=" << r.t_setup
      << "s solve=" << r.t_solve << "s\n";
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Stokes multigrid preconditioner benchmarks"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string problem = "ldc2d", family = "th", solver = "hmg", format = "csv";
  std::string out_path, mesh_dir, save_solution;
  auto *run_cmd = app.add_subcommand("run", "Run one configuration");
  run_cmd->add_option("--problem", problem, "ldc2d, bfs2d or manufactured")
      ->check(CLI::IsMember({"ldc2d", "bfs2d", "manufactured"}));
  run_cmd->add_option("--family", family, "th or sv")->check(CLI::IsMember({"th", "sv"}));
  run_cmd->add_option("--k", rc.k, "Velocity degree")->check(CLI::Range(2, 10));
  run_cmd->add_option("--refinements", rc.refinements, "Quadrisections of the base mesh")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--solver", solver, "hmg, phmg-direct, phmg-gradual, fbf-hmg, fbf-phmg")
      ->check(CLI::IsMember({"hmg", "phmg-direct", "phmg-gradual", "fbf-hmg", "fbf-phmg"}));
  run_cmd->add_option("--nv", rc.cycle.n_v, "h-cycles per p-to-h transition")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--nup", rc.cycle.nu_p, "Sweeps on p-levels")->check(CLI::PositiveNumber);
  run_cmd->add_option("--nuh", rc.cycle.nu_h, "Sweeps on h-levels")->check(CLI::PositiveNumber);
  run_cmd->add_option("--rtol", rc.rtol, "Relative residual tolerance")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--restart", rc.restart, "FGMRES restart length")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-iterations", rc.max_iterations)->check(CLI::PositiveNumber);
  run_cmd->add_option("--base-cells", rc.problem_options.base_cells,
                      "Cells per side of the structured base grid");
  run_cmd->add_option("--out", out_path, "Write the report table to a file");
  run_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "markdown"}));
  run_cmd->add_option("--mesh-dir", mesh_dir, "Directory with bundled meshes");
  run_cmd->add_option("--save-solution", save_solution,
                      "Write the solution vector, one value per line");

  std::string config_path;
  auto *sweep_cmd = app.add_subcommand("sweep", "Run a grid of configurations");
  sweep_cmd->add_option("--config", config_path, "key = value sweep file")->required();
  sweep_cmd->add_option("--out", out_path, "Write the comparison table to a file");
  sweep_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "markdown"}));

  CLI11_PARSE(app, argc, argv);

  try
  {
    ComparisonTable table;
    bool all_converged = true;
    if (run_cmd->parsed())
    {
      rc.problem = problem;
      rc.family = parse_family(family);
      rc.solver = parse_solver(solver);
      rc.problem_options.mesh_dir = mesh_dir;
      rc.keep_solution = !save_solution.empty();
      RunReport r = run(rc);
      print_summary(r, std::cerr);
      if (!save_solution.empty())
      {
        write_vector(r.solution, save_solution);
      }
      all_converged = r.converged;
      table = compare({std::move(r)}, rc.solver);
    }
    else
    {
      const SweepConfig sc = load_sweep_config(config_path);
      table = sweep(sc, [&](const RunReport &r) {
        print_summary(r, std::cerr);
        all_converged = all_converged && r.converged;
      });
    }
    const TableFormat fmt = parse_format(format);
    if (out_path.empty())
    {
      emit(table, fmt, std::cout);
    }
    else
    {
      emit(table, fmt, std::filesystem::path(out_path));
    }
    return all_converged ? 0 : 2;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
