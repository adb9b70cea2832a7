// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_REFERENCE_ELEMENT_HPP
#define STOKESMG_REFERENCE_ELEMENT_HPP

#include <vector>

#include "stokesmg/common.hpp"
#include "stokesmg/quadrature.hpp"

namespace stokesmg
{

enum class EntityKind
{
  Vertex,
  Edge,
  Cell
};

// Mesh entity a reference node sits on, by local index (vertex i, edge i opposite
// vertex i, or the cell itself).
struct NodeEntity
{
  EntityKind kind;
  int local;
};

//
// Equispaced Lagrange element of degree k on the reference triangle. Nodes are ordered
// vertices first, then edge nodes (edge i runs from local vertex (i+1)%3 to (i+2)%3),
// then interior nodes. Degree 0 gives a single centroid node (discontinuous use only).
// The basis is the product form of the equispaced nodal basis in barycentric
// coordinates, so no Vandermonde inversion is involved.
//
class ReferenceElement
{
public:
  explicit ReferenceElement(int degree);

  int degree() const { return k_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int nodes_per_edge() const { return k_ >= 1 ? k_ - 1 : 0; }
  int interior_nodes() const;

  // Barycentric multi-index (i0, i1, i2), i0 + i1 + i2 = k, of each node.
  const std::vector<std::array<int, 3>> &node_indices() const { return nodes_; }
  const std::vector<NodeEntity> &node_entities() const { return entities_; }

  // Reference coordinates (x, y) of node i.
  Point node_point(int i) const;

  // Basis values at reference point (x, y); out has num_nodes() entries.
  void eval(double x, double y, double *out) const;
  // Reference gradients; out has 2 * num_nodes() entries (d/dx, d/dy interleaved).
  void eval_grad(double x, double y, double *out) const;

  std::vector<double> values(double x, double y) const;

private:
  int k_;
  std::vector<std::array<int, 3>> nodes_;
  std::vector<NodeEntity> entities_;
};

// Basis values and reference gradients of an element tabulated on a quadrature rule.
struct Tabulation
{
  int num_points = 0, num_basis = 0;
  std::vector<double> values;  // [q * num_basis + i]
  std::vector<double> grads;   // [(q * num_basis + i) * 2 + d]

  Tabulation(const ReferenceElement &el, const QuadratureRule &rule);
  double value(int q, int i) const { return values[q * num_basis + i]; }
  double grad(int q, int i, int d) const { return grads[(q * num_basis + i) * 2 + d]; }
};

}  // namespace stokesmg

#endif  // STOKESMG_REFERENCE_ELEMENT_HPP
