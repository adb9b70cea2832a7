// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/mesh.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace stokesmg
{

namespace
{

double signed_area(const Point &a, const Point &b, const Point &c)
{
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

std::array<int, 2> sorted_pair(int a, int b)
{
  return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> cells,
           const std::vector<BoundaryEdge> &boundary, bool repair_orientation)
  : vertices_(std::move(vertices)), cells_(std::move(cells))
{
  const int nv = num_vertices();
  std::vector<char> used(nv, 0);
  for (std::size_t c = 0; c < cells_.size(); ++c)
  {
    auto &t = cells_[c];
    for (int v : t)
    {
      if (v < 0 || v >= nv)
      {
        throw Error("mesh: cell " + std::to_string(c) + " references invalid vertex " +
                    std::to_string(v));
      }
      used[v] = 1;
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
    {
      throw Error("mesh: cell " + std::to_string(c) + " has repeated vertices");
    }
    const double area = signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    if (area == 0.0)
    {
      throw Error("mesh: cell " + std::to_string(c) + " is degenerate");
    }
    if (area < 0.0)
    {
      if (!repair_orientation)
      {
        throw Error("mesh: cell " + std::to_string(c) + " is clockwise");
      }
      std::swap(t[1], t[2]);
      ++repaired_cells_;
    }
  }
  for (int v = 0; v < nv; ++v)
  {
    if (!used[v])
    {
      throw Error("mesh: dangling vertex " + std::to_string(v));
    }
  }

  // Edges: collect sorted pairs, order lexicographically.
  std::vector<std::array<int, 2>> pairs;
  pairs.reserve(3 * cells_.size());
  for (const auto &t : cells_)
  {
    for (int i = 0; i < 3; ++i)
    {
      pairs.push_back(sorted_pair(t[(i + 1) % 3], t[(i + 2) % 3]));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  edges_ = std::move(pairs);

  vertex_edges_.assign(nv, {});
  for (int e = 0; e < num_edges(); ++e)
  {
    vertex_edges_[edges_[e][0]].push_back(e);
    vertex_edges_[edges_[e][1]].push_back(e);
  }

  cell_edges_.resize(cells_.size());
  edge_cells_.assign(edges_.size(), {-1, -1});
  vertex_cells_.assign(nv, {});
  for (int c = 0; c < num_cells(); ++c)
  {
    const auto &t = cells_[c];
    for (int i = 0; i < 3; ++i)
    {
      vertex_cells_[t[i]].push_back(c);
      const int e = find_edge(t[(i + 1) % 3], t[(i + 2) % 3]);
      cell_edges_[c][i] = e;
      auto &ec = edge_cells_[e];
      if (ec[0] < 0)
      {
        ec[0] = c;
      }
      else if (ec[1] < 0)
      {
        ec[1] = c;
      }
      else
      {
        throw Error("mesh: edge shared by more than two cells");
      }
    }
  }

  edge_markers_.assign(edges_.size(), 0);
  for (const auto &be : boundary)
  {
    const int e = find_edge(be.a, be.b);
    if (e < 0)
    {
      throw Error("mesh: boundary edge (" + std::to_string(be.a) + ", " +
                  std::to_string(be.b) + ") is not a mesh edge");
    }
    if (!is_boundary_edge(e))
    {
      throw Error("mesh: marked edge (" + std::to_string(be.a) + ", " +
                  std::to_string(be.b) + ") is interior");
    }
    if (be.marker <= 0)
    {
      throw Error("mesh: boundary markers must be positive");
    }
    edge_markers_[e] = be.marker;
  }
}

int Mesh::find_edge(int a, int b) const
{
  const auto key = sorted_pair(a, b);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key)
  {
    return -1;
  }
  return static_cast<int>(it - edges_.begin());
}

std::vector<BoundaryEdge> Mesh::boundary_edges() const
{
  std::vector<BoundaryEdge> out;
  for (int e = 0; e < num_edges(); ++e)
  {
    if (edge_markers_[e] > 0)
    {
      out.push_back({edges_[e][0], edges_[e][1], edge_markers_[e]});
    }
  }
  return out;
}

double Mesh::cell_area(int c) const
{
  const auto &t = cells_[c];
  return signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
}

double Mesh::total_area() const
{
  double a = 0.0;
  for (int c = 0; c < num_cells(); ++c)
  {
    a += cell_area(c);
  }
  return a;
}

Point Mesh::barycenter(int c) const
{
  const auto &t = cells_[c];
  Point p{0.0, 0.0};
  for (int v : t)
  {
    p[0] += vertices_[v][0] / 3.0;
    p[1] += vertices_[v][1] / 3.0;
  }
  return p;
}

bool Mesh::has_barycentric_ancestor() const
{
  for (const Mesh *m = this; m; m = m->parent_.get())
  {
    if (m->refinement_ == RefinementKind::Barycentric)
    {
      return true;
    }
  }
  return false;
}

MeshPtr generate_structured_grid(int n, const Rectangle &domain)
{
  if (n < 1)
  {
    throw Error("generate_structured_grid: n must be at least 1");
  }
  std::vector<Point> vertices;
  vertices.reserve((n + 1) * (n + 1));
  const double hx = (domain.x1 - domain.x0) / n, hy = (domain.y1 - domain.y0) / n;
  for (int j = 0; j <= n; ++j)
  {
    for (int i = 0; i <= n; ++i)
    {
      // Snap the last lattice line onto the exact domain bound.
      const double x = (i == n) ? domain.x1 : domain.x0 + i * hx;
      const double y = (j == n) ? domain.y1 : domain.y0 + j * hy;
      vertices.push_back({x, y});
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
  {
    for (int i = 0; i < n; ++i)
    {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      cells.push_back({a, b, c});
      cells.push_back({a, c, d});
    }
  }
  std::vector<BoundaryEdge> boundary;
  for (int i = 0; i < n; ++i)
  {
    boundary.push_back({id(i, 0), id(i + 1, 0), 1});
    boundary.push_back({id(n, i), id(n, i + 1), 2});
    boundary.push_back({id(i, n), id(i + 1, n), 3});
    boundary.push_back({id(0, i), id(0, i + 1), 4});
  }
  return std::make_shared<const Mesh>(std::move(vertices), std::move(cells), boundary);
}

MeshPtr refine_uniform(const MeshPtr &m)
{
  const int nv = m->num_vertices();
  std::vector<Point> vertices = m->vertices();
  vertices.reserve(nv + m->num_edges());
  for (const auto &e : m->edges())
  {
    const auto &a = m->vertex(e[0]);
    const auto &b = m->vertex(e[1]);
    vertices.push_back({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
  }
  std::vector<std::array<int, 3>> cells;
  std::vector<int> parent_of;
  cells.reserve(4 * m->num_cells());
  parent_of.reserve(4 * m->num_cells());
  for (int c = 0; c < m->num_cells(); ++c)
  {
    const auto &t = m->cell(c);
    const auto &ce = m->cell_edges(c);
    // Midpoint of the edge opposite local vertex i.
    const int m0 = nv + ce[0], m1 = nv + ce[1], m2 = nv + ce[2];
    cells.push_back({t[0], m2, m1});
    cells.push_back({m2, t[1], m0});
    cells.push_back({m1, m0, t[2]});
    cells.push_back({m0, m1, m2});
    for (int i = 0; i < 4; ++i)
    {
      parent_of.push_back(c);
    }
  }
  std::vector<BoundaryEdge> boundary;
  for (const auto &be : m->boundary_edges())
  {
    const int mid = nv + m->find_edge(be.a, be.b);
    boundary.push_back({be.a, mid, be.marker});
    boundary.push_back({mid, be.b, be.marker});
  }
  auto child = std::make_shared<Mesh>(std::move(vertices), std::move(cells), boundary);
  child->parent_ = m;
  child->refinement_ = RefinementKind::Quadrisection;
  child->child_to_parent_ = std::move(parent_of);
  return child;
}

MeshPtr refine_barycentric(const MeshPtr &m)
{
  const int nv = m->num_vertices();
  std::vector<Point> vertices = m->vertices();
  std::vector<std::array<int, 3>> cells;
  std::vector<int> parent_of;
  cells.reserve(3 * m->num_cells());
  for (int c = 0; c < m->num_cells(); ++c)
  {
    vertices.push_back(m->barycenter(c));
    const auto &t = m->cell(c);
    const int b = nv + c;
    cells.push_back({t[0], t[1], b});
    cells.push_back({t[1], t[2], b});
    cells.push_back({t[2], t[0], b});
    for (int i = 0; i < 3; ++i)
    {
      parent_of.push_back(c);
    }
  }
  auto child =
      std::make_shared<Mesh>(std::move(vertices), std::move(cells), m->boundary_edges());
  child->parent_ = m;
  child->refinement_ = RefinementKind::Barycentric;
  child->child_to_parent_ = std::move(parent_of);
  return child;
}

EntitySet vertex_star(const Mesh &m, int v)
{
  if (v < 0 || v >= m.num_vertices())
  {
    throw Error("vertex_star: invalid vertex id " + std::to_string(v));
  }
  EntitySet s;
  s.vertices = {v};
  s.edges = m.vertex_edges(v);
  s.cells = m.vertex_cells(v);
  std::sort(s.edges.begin(), s.edges.end());
  std::sort(s.cells.begin(), s.cells.end());
  return s;
}

EntitySet closure(const Mesh &m, const EntitySet &s)
{
  EntitySet out = s;
  for (int c : s.cells)
  {
    for (int v : m.cell(c))
    {
      out.vertices.push_back(v);
    }
    for (int e : m.cell_edges(c))
    {
      out.edges.push_back(e);
    }
  }
  for (int e : s.edges)
  {
    out.vertices.push_back(m.edge(e)[0]);
    out.vertices.push_back(m.edge(e)[1]);
  }
  auto canon = [](std::vector<int> &ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  };
  canon(out.vertices);
  canon(out.edges);
  canon(out.cells);
  return out;
}

}  // namespace stokesmg
