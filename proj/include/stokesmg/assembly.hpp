// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_ASSEMBLY_HPP
#define STOKESMG_ASSEMBLY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "stokesmg/function_space.hpp"
#include "stokesmg/sparse.hpp"

namespace stokesmg
{

enum class Family
{
  TaylorHood,     // P_k / P_{k-1}
  ScottVogelius,  // P_k / P_{k-1}^disc
};

std::string to_string(Family f);

// Mixed pair: continuous vector P_k velocity with a P_{k-1} pressure.
struct Discretization
{
  Family family = Family::TaylorHood;
  int degree = 2;

  Continuity pressure_continuity() const
  {
    return family == Family::TaylorHood ? Continuity::Continuous : Continuity::Discontinuous;
  }
  std::string name() const;
};

using VectorField = std::function<Point(double, double)>;
using ScalarField = std::function<double(double, double)>;

struct BoundaryCondition
{
  enum class Kind
  {
    Dirichlet,  // u = value
    Neumann     // du/dn - n p = value
  };
  Kind kind = Kind::Dirichlet;
  VectorField value;
};

struct ExactSolution
{
  VectorField velocity;
  ScalarField pressure;
};

//
// Stokes problem: -lap u + grad p = f, -div u = 0, with one boundary condition per mesh
// marker. meshes holds the nested quadrisection hierarchy (coarsest first); Scott-Vogelius
// instances solve on the barycentric refinement of meshes.back().
//
struct ProblemInstance
{
  std::string name;
  std::vector<MeshPtr> meshes;
  MeshPtr fine_mesh;
  Discretization discretization;
  std::map<int, BoundaryCondition> boundary;
  VectorField forcing;
  std::optional<ExactSolution> exact;
  // Dirichlet data on the whole boundary: pressure only defined up to a constant.
  bool enclosed_flow = false;

  int refinements() const { return static_cast<int>(meshes.size()) - 1; }
  // Throws if the instance violates its invariants.
  void validate() const;
};

//
// Assembled saddle-point system K = [A B^T; B 0]. Dirichlet conditions are imposed by
// symmetric elimination: constrained rows and columns of A (and columns of B) are
// zeroed, A gets a unit diagonal and the right-hand side is lifted. Zeroed entries and
// the pressure-pressure coupling pattern stay in the sparsity structure.
//
struct SaddleSystem
{
  SpacePtr velocity;  // vector space, 2 components
  SpacePtr pressure;  // scalar space
  SparseMatrix a, b, k;
  Vector rhs;
  std::vector<int> dirichlet_dofs;   // monolithic (= velocity) dof ids, sorted
  Vector dirichlet_values;           // aligned with dirichlet_dofs
  std::vector<char> dirichlet_mask;  // over all monolithic dofs
  bool enclosed_flow = false;

  int velocity_dofs() const { return a.rows(); }
  int pressure_dofs() const { return b.rows(); }
  int size() const { return k.rows(); }
  double nnz_per_dof() const { return static_cast<double>(k.nnz()) / k.rows(); }

  // Removes the constant-pressure component (l2 mean of the pressure block) in place.
  void project_pressure_mean(Vector &x) const;
};

struct AssemblyOptions
{
  // Pure-Neumann style assembly (no elimination) when false.
  bool apply_dirichlet = true;
};

SaddleSystem assemble_stokes(const ProblemInstance &p, const MeshPtr &mesh,
                             const Discretization &disc, const AssemblyOptions &options = {});
SaddleSystem assemble_stokes(const ProblemInstance &p, const AssemblyOptions &options = {});

// Scalar Laplacian and mass matrices of a scalar space (quadrature of degree 2k).
SparseMatrix assemble_laplacian(const FunctionSpace &q);
SparseMatrix assemble_pressure_mass(const FunctionSpace &q);

// Sorted velocity dofs on Dirichlet boundary segments with their values.
std::pair<std::vector<int>, Vector> dirichlet_data(const ProblemInstance &p,
                                                   const FunctionSpace &velocity);

// L2 norm and max over quadrature points of div u_h (quadrature of degree 2k).
double compute_divergence_norm(const Vector &u, const FunctionSpace &velocity);
double compute_max_divergence(const Vector &u, const FunctionSpace &velocity);

struct SolutionErrors
{
  double velocity_l2 = 0.0;
  double pressure_l2 = 0.0;
};

// L2 errors against an exact solution (quadrature of degree 2k + 2). With
// subtract_pressure_mean both pressures are compared after removing their means.
SolutionErrors compute_errors(const Vector &u, const Vector &p, const FunctionSpace &velocity,
                              const FunctionSpace &pressure, const ExactSolution &exact,
                              bool subtract_pressure_mean);

// Writes one value per line in dof order.
void write_vector(const Vector &x, const std::string &path);

}  // namespace stokesmg

#endif  // STOKESMG_ASSEMBLY_HPP
