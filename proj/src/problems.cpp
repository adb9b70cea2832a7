// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/problems.hpp"

#include <cmath>
#include <numbers>

namespace stokesmg
{

namespace
{

constexpr double pi = std::numbers::pi;

// Fills meshes (base plus quadrisections) and the finest mesh for the family.
void build_meshes(ProblemInstance &p, MeshPtr base, int refinements)
{
  if (refinements < 0)
  {
    throw Error("refinements must be non-negative");
  }
  p.meshes = {std::move(base)};
  for (int i = 0; i < refinements; ++i)
  {
    p.meshes.push_back(refine_uniform(p.meshes.back()));
  }
  p.fine_mesh = p.discretization.family == Family::ScottVogelius
                    ? refine_barycentric(p.meshes.back())
                    : p.meshes.back();
}

BoundaryCondition dirichlet(VectorField f)
{
  return {BoundaryCondition::Kind::Dirichlet, std::move(f)};
}

Point zero(double, double)
{
  return {0.0, 0.0};
}

}  // namespace

ProblemInstance lid_driven_cavity(int refinements, int k, Family family,
                                  const ProblemOptions &options)
{
  ProblemInstance p;
  p.name = "ldc2d";
  p.discretization = {family, k};
  const int n = options.base_cells > 0 ? options.base_cells : 2;
  build_meshes(p, generate_structured_grid(n, {-1.0, -1.0, 1.0, 1.0}), refinements);
  p.boundary[1] = dirichlet(zero);
  p.boundary[2] = dirichlet(zero);
  p.boundary[3] = dirichlet([](double x, double) { return Point{1.0 - std::pow(x, 4), 0.0}; });
  p.boundary[4] = dirichlet(zero);
  p.forcing = zero;
  p.enclosed_flow = true;
  p.validate();
  return p;
}

ProblemInstance backward_facing_step(int refinements, int k, Family family,
                                     const ProblemOptions &options)
{
  ProblemInstance p;
  p.name = "bfs2d";
  p.discretization = {family, k};
  const auto dir = options.mesh_dir.empty() ? default_mesh_dir() : options.mesh_dir;
  const auto path = dir / "bfs2d.mesh";
  if (!std::filesystem::exists(path))
  {
    throw Error("backward_facing_step: mesh file not found: " + path.string());
  }
  build_meshes(p, load_mesh(path), refinements);
  p.boundary[1] = dirichlet([](double, double y) { return Point{4.0 * y * (1.0 - y), 0.0}; });
  p.boundary[2] = {BoundaryCondition::Kind::Neumann, zero};
  p.boundary[3] = dirichlet(zero);
  p.forcing = zero;
  p.enclosed_flow = false;
  p.validate();
  return p;
}

ProblemInstance manufactured(int refinements, int k, Family family, const ProblemOptions &options)
{
  ProblemInstance p;
  p.name = "manufactured";
  p.discretization = {family, k};
  const int n = options.base_cells > 0 ? options.base_cells : 4;
  build_meshes(p, generate_structured_grid(n, {-1.0, -1.0, 1.0, 1.0}), refinements);
  ExactSolution ex;
  ex.velocity = [](double x, double y) {
    const double sx = std::sin(pi * x), sy = std::sin(pi * y);
    return Point{pi * sx * sx * std::sin(2 * pi * y), -pi * std::sin(2 * pi * x) * sy * sy};
  };
  // Odd in x, so the mean over the square is already zero.
  ex.pressure = [](double x, double y) { return std::sin(pi * x) * std::cos(pi * y); };
  p.forcing = [](double x, double y) {
    const double p3 = 2 * pi * pi * pi;
    return Point{-p3 * std::sin(2 * pi * y) * (2 * std::cos(2 * pi * x) - 1) +
                     pi * std::cos(pi * x) * std::cos(pi * y),
                 p3 * std::sin(2 * pi * x) * (2 * std::cos(2 * pi * y) - 1) -
                     pi * std::sin(pi * x) * std::sin(pi * y)};
  };
  for (int marker = 1; marker <= 4; ++marker)
  {
    p.boundary[marker] = dirichlet(ex.velocity);
  }
  p.exact = std::move(ex);
  p.enclosed_flow = true;
  p.validate();
  return p;
}

ProblemInstance make_problem(const std::string &name, int refinements, int k, Family family,
                             const ProblemOptions &options)
{
  if (name == "ldc2d")
  {
    return lid_driven_cavity(refinements, k, family, options);
  }
  if (name == "bfs2d")
  {
    return backward_facing_step(refinements, k, family, options);
  }
  if (name == "manufactured")
  {
    return manufactured(refinements, k, family, options);
  }
  throw Error("unknown problem '" + name + "' (expected ldc2d, bfs2d or manufactured)");
}

Family parse_family(const std::string &s)
{
  if (s == "th")
  {
    return Family::TaylorHood;
  }
  if (s == "sv")
  {
    return Family::ScottVogelius;
  }
  throw Error("unknown family '" + s + "' (expected th or sv)");
}

std::filesystem::path default_mesh_dir()
{
  if (const char *env = std::getenv("STOKESMG_MESH_DIR"))
  {
    return env;
  }
  return STOKESMG_DATA_DIR;
}

}  // namespace stokesmg
