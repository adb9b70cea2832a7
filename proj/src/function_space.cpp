// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/function_space.hpp"

#include <algorithm>
#include <string>

namespace stokesmg
{

CellGeometry::CellGeometry(const Mesh &m, int c)
{
  const auto &t = m.cell(c);
  const Point &a = m.vertex(t[0]), &b = m.vertex(t[1]), &d = m.vertex(t[2]);
  origin = a;
  jac[0][0] = b[0] - a[0];
  jac[1][0] = b[1] - a[1];
  jac[0][1] = d[0] - a[0];
  jac[1][1] = d[1] - a[1];
  det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
  // inverse transpose
  inv_jac_t[0][0] = jac[1][1] / det;
  inv_jac_t[0][1] = -jac[1][0] / det;
  inv_jac_t[1][0] = -jac[0][1] / det;
  inv_jac_t[1][1] = jac[0][0] / det;
}

Point CellGeometry::map(double x, double y) const
{
  return {origin[0] + jac[0][0] * x + jac[0][1] * y, origin[1] + jac[1][0] * x + jac[1][1] * y};
}

Point CellGeometry::pull_back(const Point &p) const
{
  const double dx = p[0] - origin[0], dy = p[1] - origin[1];
  // J^{-1} = (J^{-T})^T
  return {inv_jac_t[0][0] * dx + inv_jac_t[1][0] * dy, inv_jac_t[0][1] * dx + inv_jac_t[1][1] * dy};
}

FunctionSpace::FunctionSpace(MeshPtr mesh, int degree, Continuity continuity, int components)
  : mesh_(std::move(mesh)), element_(degree), continuity_(continuity), components_(components)
{
  if (components < 1)
  {
    throw Error("function space needs at least one component");
  }
  if (continuity == Continuity::Continuous && degree < 1)
  {
    throw Error("continuous spaces need degree >= 1, got " + std::to_string(degree));
  }
  const Mesh &m = *mesh_;
  const int nloc = element_.num_nodes();
  const int k = degree;
  cell_nodes_.resize(static_cast<std::size_t>(m.num_cells()) * nloc);

  if (continuity == Continuity::Discontinuous)
  {
    num_nodes_ = m.num_cells() * nloc;
    for (int i = 0; i < num_nodes_; ++i)
    {
      cell_nodes_[i] = i;
    }
  }
  else
  {
    const int ne = k - 1;
    const int ni = element_.interior_nodes();
    const int edge_base = m.num_vertices();
    const int cell_base = edge_base + m.num_edges() * ne;
    num_nodes_ = cell_base + m.num_cells() * ni;
    const auto &ents = element_.node_entities();
    for (int c = 0; c < m.num_cells(); ++c)
    {
      const auto &t = m.cell(c);
      const auto &ce = m.cell_edges(c);
      int *out = &cell_nodes_[static_cast<std::size_t>(c) * nloc];
      int interior = 0;
      int edge_pos[3] = {0, 0, 0};
      for (int i = 0; i < nloc; ++i)
      {
        switch (ents[i].kind)
        {
        case EntityKind::Vertex:
          out[i] = t[ents[i].local];
          break;
        case EntityKind::Edge:
        {
          const int le = ents[i].local;
          const int ge = ce[le];
          const int from = t[(le + 1) % 3];
          const int pos = edge_pos[le]++;
          const int oriented = (from == m.edge(ge)[0]) ? pos : ne - 1 - pos;
          out[i] = edge_base + ge * ne + oriented;
          break;
        }
        case EntityKind::Cell:
          out[i] = cell_base + c * ni + interior++;
          break;
        }
      }
    }
  }

  node_points_.resize(num_nodes_);
  for (int c = 0; c < m.num_cells(); ++c)
  {
    const CellGeometry g(m, c);
    const auto nodes = cell_nodes(c);
    for (int i = 0; i < nloc; ++i)
    {
      const Point r = element_.node_point(i);
      node_points_[nodes[i]] = g.map(r[0], r[1]);
    }
  }
}

std::vector<int> FunctionSpace::vertex_nodes(int v) const
{
  if (!continuous())
  {
    return {};
  }
  return {v};
}

std::vector<int> FunctionSpace::edge_nodes(int e) const
{
  if (!continuous())
  {
    return {};
  }
  const int ne = degree() - 1;
  std::vector<int> out(ne);
  for (int j = 0; j < ne; ++j)
  {
    out[j] = mesh_->num_vertices() + e * ne + j;
  }
  return out;
}

std::vector<int> FunctionSpace::cell_nodes_owned(int c) const
{
  if (!continuous())
  {
    const auto n = cell_nodes(c);
    return {n.begin(), n.end()};
  }
  const int ni = element_.interior_nodes();
  const int base = mesh_->num_vertices() + mesh_->num_edges() * (degree() - 1);
  std::vector<int> out(ni);
  for (int j = 0; j < ni; ++j)
  {
    out[j] = base + c * ni + j;
  }
  return out;
}

std::vector<int> FunctionSpace::boundary_nodes(std::span<const int> markers) const
{
  const Mesh &m = *mesh_;
  std::vector<int> out;
  for (int e = 0; e < m.num_edges(); ++e)
  {
    const int mk = m.edge_marker(e);
    if (mk == 0 || std::find(markers.begin(), markers.end(), mk) == markers.end())
    {
      continue;
    }
    if (continuous())
    {
      out.push_back(m.edge(e)[0]);
      out.push_back(m.edge(e)[1]);
      for (int n : edge_nodes(e))
      {
        out.push_back(n);
      }
    }
    else
    {
      // Nodes of the adjacent cell lying on this edge.
      const int c = m.edge_cells(e)[0];
      const auto &ce = m.cell_edges(c);
      const int le = static_cast<int>(std::find(ce.begin(), ce.end(), e) - ce.begin());
      const auto nodes = cell_nodes(c);
      const auto &idx = element_.node_indices();
      for (int i = 0; i < nodes_per_cell(); ++i)
      {
        if (degree() > 0 && idx[i][le] == 0)
        {
          out.push_back(nodes[i]);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vector FunctionSpace::interpolate(const std::function<double(double, double, int)> &f) const
{
  Vector u(num_dofs());
  for (int n = 0; n < num_nodes_; ++n)
  {
    for (int c = 0; c < components_; ++c)
    {
      u[dof(n, c)] = f(node_points_[n][0], node_points_[n][1], c);
    }
  }
  return u;
}

SpacePtr build_space(MeshPtr mesh, int degree, Continuity continuity, int components)
{
  return std::make_shared<const FunctionSpace>(std::move(mesh), degree, continuity, components);
}

}  // namespace stokesmg
