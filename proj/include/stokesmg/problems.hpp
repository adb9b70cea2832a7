// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_PROBLEMS_HPP
#define STOKESMG_PROBLEMS_HPP

#include <filesystem>

#include "stokesmg/assembly.hpp"

namespace stokesmg
{

struct ProblemOptions
{
  // Cells per side of the structured base grid; 0 picks the problem default.
  int base_cells = 0;
  // Directory holding bundled meshes; empty uses the installed data directory.
  std::filesystem::path mesh_dir;
};

// Regularized lid-driven cavity on [-1, 1]^2: u = (1 - x^4, 0) on the lid y = 1, no slip
// elsewhere, no forcing. Default base grid 2 x 2.
ProblemInstance lid_driven_cavity(int refinements, int k, Family family,
                                  const ProblemOptions &options = {});

// Backward-facing step (-1, 0) x (0, 1) u (0, 5) x (-1, 1) on the bundled unstructured
// mesh: parabolic inflow u = (4y(1 - y), 0) at x = -1, natural outflow at x = 5, no slip
// elsewhere.
ProblemInstance backward_facing_step(int refinements, int k, Family family,
                                     const ProblemOptions &options = {});

// Smooth exact solution on [-1, 1]^2 with u = curl(sin^2(pi x) sin^2(pi y)) and
// p = sin(pi x) cos(pi y); Dirichlet data from u everywhere. Default base grid 4 x 4.
ProblemInstance manufactured(int refinements, int k, Family family,
                             const ProblemOptions &options = {});

// Dispatches on "ldc2d", "bfs2d" or "manufactured".
ProblemInstance make_problem(const std::string &name, int refinements, int k, Family family,
                             const ProblemOptions &options = {});

Family parse_family(const std::string &s);

// Directory of the bundled meshes.
std::filesystem::path default_mesh_dir();

}  // namespace stokesmg

#endif  // STOKESMG_PROBLEMS_HPP
