// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_MESH_HPP
#define STOKESMG_MESH_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "stokesmg/common.hpp"

namespace stokesmg
{

enum class RefinementKind
{
  None,
  Quadrisection,
  Barycentric
};

// Boundary edge given by its two vertex ids and a positive marker.
struct BoundaryEdge
{
  int a, b;
  int marker;
};

// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rectangle
{
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
};

// Three disjoint, sorted id lists.
struct EntitySet
{
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> cells;

  bool empty() const { return vertices.empty() && edges.empty() && cells.empty(); }
  friend bool operator==(const EntitySet &, const EntitySet &) = default;
};

//
// Conforming 2D triangle mesh. Cells are stored counterclockwise; edges are derived from
// the cells, keyed by their sorted vertex pair and numbered in lexicographic order. Local
// edge i of a cell is the edge opposite local vertex i. Meshes are immutable once built.
//
class Mesh
{
public:
  // Builds the topology. Cells with negative orientation are rejected unless
  // repair_orientation is set, in which case they are flipped (and counted).
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> cells,
       const std::vector<BoundaryEdge> &boundary, bool repair_orientation = false);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }

  const std::vector<Point> &vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>> &cells() const { return cells_; }
  const std::vector<std::array<int, 2>> &edges() const { return edges_; }
  const Point &vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3> &cell(int c) const { return cells_[c]; }
  const std::array<int, 2> &edge(int e) const { return edges_[e]; }

  // Edge ids of a cell, local edge i opposite local vertex i.
  const std::array<int, 3> &cell_edges(int c) const { return cell_edges_[c]; }

  // Marker of an edge; 0 for interior edges.
  int edge_marker(int e) const { return edge_markers_[e]; }
  bool is_boundary_edge(int e) const { return edge_cells_[e][1] < 0; }
  std::vector<BoundaryEdge> boundary_edges() const;

  // Cells adjacent to an edge (second entry -1 on the boundary).
  const std::array<int, 2> &edge_cells(int e) const { return edge_cells_[e]; }
  const std::vector<int> &vertex_cells(int v) const { return vertex_cells_[v]; }
  const std::vector<int> &vertex_edges(int v) const { return vertex_edges_[v]; }

  // Returns the id of edge (a, b) in either orientation, or -1.
  int find_edge(int a, int b) const;

  double cell_area(int c) const;
  double total_area() const;
  Point barycenter(int c) const;

  // Number of cells flipped during construction (load repair).
  int repaired_cells() const { return repaired_cells_; }

  // Nesting information for refined meshes.
  const std::shared_ptr<const Mesh> &parent() const { return parent_; }
  RefinementKind refinement() const { return refinement_; }
  int parent_cell(int c) const { return child_to_parent_[c]; }
  const std::vector<int> &child_to_parent() const { return child_to_parent_; }
  bool has_barycentric_ancestor() const;

private:
  friend std::shared_ptr<const Mesh> refine_uniform(const std::shared_ptr<const Mesh> &);
  friend std::shared_ptr<const Mesh> refine_barycentric(const std::shared_ptr<const Mesh> &);

  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<std::array<int, 2>> edge_cells_;
  std::vector<int> edge_markers_;
  std::vector<std::vector<int>> vertex_cells_;
  std::vector<std::vector<int>> vertex_edges_;
  int repaired_cells_ = 0;

  std::shared_ptr<const Mesh> parent_;
  RefinementKind refinement_ = RefinementKind::None;
  std::vector<int> child_to_parent_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

// n x n squares, each split along its lower-left to upper-right diagonal. Boundary
// markers: bottom 1, right 2, top 3, left 4.
MeshPtr generate_structured_grid(int n, const Rectangle &domain = {});

// Quadrisection: each cell split into 4 through its edge midpoints.
MeshPtr refine_uniform(const MeshPtr &m);

// Alfeld split: each cell split into 3 around its barycenter.
MeshPtr refine_barycentric(const MeshPtr &m);

// {v} together with all edges and cells incident to v.
EntitySet vertex_star(const Mesh &m, int v);

// Adds every vertex and edge of the cells and edges in s.
EntitySet closure(const Mesh &m, const EntitySet &s);

// Text format: "V E_b T", V lines "x y", T lines "v0 v1 v2", E_b lines "va vb marker".
MeshPtr load_mesh(const std::filesystem::path &path);
void save_mesh(const Mesh &m, const std::filesystem::path &path);

}  // namespace stokesmg

#endif  // STOKESMG_MESH_HPP
