// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_FUNCTION_SPACE_HPP
#define STOKESMG_FUNCTION_SPACE_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "stokesmg/mesh.hpp"
#include "stokesmg/reference_element.hpp"

namespace stokesmg
{

enum class Continuity
{
  Continuous,
  Discontinuous
};

// Affine map from the reference triangle onto a mesh cell.
struct CellGeometry
{
  Point origin;
  double jac[2][2];      // columns are x1 - x0 and x2 - x0
  double inv_jac_t[2][2];
  double det;

  CellGeometry(const Mesh &m, int c);
  Point map(double x, double y) const;
  // Reference coordinates of a physical point.
  Point pull_back(const Point &p) const;
  // Physical gradient from a reference gradient.
  void push_gradient(const double *ref, double *phys) const
  {
    phys[0] = inv_jac_t[0][0] * ref[0] + inv_jac_t[0][1] * ref[1];
    phys[1] = inv_jac_t[1][0] * ref[0] + inv_jac_t[1][1] * ref[1];
  }
};

//
// Lagrange space of a given degree, continuity and number of components on a mesh.
// Scalar nodes are numbered vertices first, then edges (k-1 nodes each, ordered from the
// lower to the higher global vertex id), then cell interiors; discontinuous spaces number
// cell by cell. Components are interleaved per node: dof = node * components + comp.
//
class FunctionSpace
{
public:
  FunctionSpace(MeshPtr mesh, int degree, Continuity continuity, int components = 1);

  const MeshPtr &mesh_ptr() const { return mesh_; }
  const Mesh &mesh() const { return *mesh_; }
  int degree() const { return element_.degree(); }
  bool continuous() const { return continuity_ == Continuity::Continuous; }
  Continuity continuity() const { return continuity_; }
  int components() const { return components_; }
  const ReferenceElement &element() const { return element_; }

  int num_nodes() const { return num_nodes_; }
  int num_dofs() const { return num_nodes_ * components_; }
  int nodes_per_cell() const { return element_.num_nodes(); }
  int dof(int node, int comp) const { return node * components_ + comp; }

  std::span<const int> cell_nodes(int c) const
  {
    return {cell_nodes_.data() + static_cast<std::size_t>(c) * nodes_per_cell(),
            static_cast<std::size_t>(nodes_per_cell())};
  }
  const Point &node_point(int n) const { return node_points_[n]; }

  // Nodes owned by a mesh entity. Discontinuous spaces attach every node to its cell.
  std::vector<int> vertex_nodes(int v) const;
  std::vector<int> edge_nodes(int e) const;
  std::vector<int> cell_nodes_owned(int c) const;

  // Nodes lying on boundary edges carrying one of the given markers.
  std::vector<int> boundary_nodes(std::span<const int> markers) const;

  // Nodal interpolation of a scalar function of (x, y) and component c.
  Vector interpolate(const std::function<double(double, double, int)> &f) const;

private:
  MeshPtr mesh_;
  ReferenceElement element_;
  Continuity continuity_;
  int components_;
  int num_nodes_ = 0;
  std::vector<int> cell_nodes_;
  std::vector<Point> node_points_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

SpacePtr build_space(MeshPtr mesh, int degree, Continuity continuity, int components = 1);

}  // namespace stokesmg

#endif  // STOKESMG_FUNCTION_SPACE_HPP
